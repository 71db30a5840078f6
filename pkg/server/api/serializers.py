from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from lab.serializers import GameSerializer, PlayerSerializer
from strategies.textchoices import GOOD_KINDS


class ValidateSerializer(serializers.Serializer):
    game = GameSerializer()


class CertifySerializer(serializers.Serializer):
    game = GameSerializer()
    strategy = PlayerSerializer()

    def validate(self, attrs):
        strategy = attrs['strategy']
        if strategy.get('strategy') not in GOOD_KINDS:
            raise serializers.ValidationError(
                {'strategy': _('certification needs threshold_good or continuous_good')}, code='not_good')
        if strategy['player'] > attrs['game']['players']:
            raise serializers.ValidationError({'strategy': _('no such player')}, code='unknown_player')
        return attrs


class BoundsSerializer(serializers.Serializer):
    e_norm = serializers.FloatField(min_value=0.0)
    l_norm = serializers.FloatField(min_value=0.0)
    eta = serializers.FloatField()
    n = serializers.IntegerField(min_value=1)

    def validate_eta(self, value):
        if not value > 0:
            raise serializers.ValidationError(_('eta must be positive'), code='invalid_eta')
        return value

    def validate(self, attrs):
        if not attrs['e_norm'] > 0:
            raise serializers.ValidationError({'e_norm': _('|E| must be positive')}, code='invalid_norm')
        return attrs
