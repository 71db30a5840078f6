from django.db import models
from django.utils.translation import gettext_lazy as _


class NatureKinds(models.TextChoices):
    all_cooperate = 'all_cooperate', _('Every opponent cooperates')
    all_defect = 'all_defect', _('Every opponent defects')
    others = 'others', _('Opponents follow their own assignments')
