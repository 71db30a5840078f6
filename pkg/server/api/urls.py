from django.urls import path

from .views import BoundsView, CertifyView, ValidateView

app_name = 'api'

urlpatterns = [
    path('validate/', ValidateView.as_view(), name='validate'),
    path('certify/', CertifyView.as_view(), name='certify'),
    path('bounds/', BoundsView.as_view(), name='bounds'),
]
