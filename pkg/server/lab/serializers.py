from django.utils.translation import gettext_lazy as _
from rest_framework import serializers

from dynamics.flow import DEFAULT_DURATION, DEFAULT_STEP
from dynamics.textchoices import NatureKinds
from games.textchoices import GameTypes
from strategies.textchoices import PolicyKinds, StrategyKinds

TOPOLOGIES = ('path', 'cycle', 'star', 'complete')
PAIR_KEYS = ('CD', 'DD', 'CC', 'DC')


class GameSerializer(serializers.Serializer):
    type = serializers.ChoiceField(choices=GameTypes.choices)
    players = serializers.IntegerField(min_value=2, required=False)
    # N-player tables
    vC = serializers.ListField(child=serializers.FloatField(), required=False)
    vD = serializers.ListField(child=serializers.FloatField(), required=False)
    # free riding
    f = serializers.ListField(child=serializers.FloatField(), required=False)
    c = serializers.FloatField(required=False)
    # networks
    topology = serializers.ChoiceField(choices=TOPOLOGIES, required=False)
    edges = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(), min_length=2, max_length=2),
        required=False,
    )
    symmetrize = serializers.BooleanField(default=False)
    kernel = serializers.JSONField(default='uniform')
    payoffs = serializers.DictField(child=serializers.FloatField(), required=False)

    def validate(self, attrs):
        kind = attrs['type']
        missing = []
        if kind == GameTypes.nplayer:
            missing = [key for key in ('players', 'vC', 'vD') if key not in attrs]
        elif kind == GameTypes.free_riding:
            missing = [key for key in ('players', 'f', 'c') if key not in attrs]
        else:
            if 'payoffs' not in attrs:
                missing.append('payoffs')
            if 'edges' not in attrs and 'topology' not in attrs:
                missing.append('edges or topology')
            if 'players' not in attrs:
                missing.append('players')
        if missing:
            raise serializers.ValidationError(
                {key: _('required for a %(type)s game') % {'type': kind} for key in missing},
                code='missing_field')

        if kind == GameTypes.network:
            keys = set(attrs['payoffs'])
            if keys != set(PAIR_KEYS):
                raise serializers.ValidationError(
                    {'payoffs': _('expected exactly the keys CD, DD, CC, DC')}, code='invalid_payoffs')
            kernel = attrs['kernel']
            if isinstance(kernel, str):
                if kernel != 'uniform':
                    raise serializers.ValidationError({'kernel': _('unknown kernel rule')}, code='invalid_kernel')
            elif not (isinstance(kernel, list) and all(isinstance(row, list) for row in kernel)):
                raise serializers.ValidationError(
                    {'kernel': _('either "uniform" or a row-major matrix')}, code='invalid_kernel')
        return attrs


class AgentFieldsMixin(serializers.Serializer):
    strategy = serializers.ChoiceField(choices=StrategyKinds.choices, required=False)
    policy = serializers.ChoiceField(choices=PolicyKinds.choices, required=False)
    delta = serializers.FloatField(min_value=0.0, required=False)
    band_p = serializers.FloatField(min_value=0.0, max_value=1.0, required=False)
    p = serializers.FloatField(min_value=0.0, max_value=1.0, required=False)

    def validate(self, attrs):
        if 'strategy' in attrs and 'policy' in attrs:
            raise serializers.ValidationError(_('give either a strategy or a policy, not both'), code='ambiguous')
        if attrs.get('strategy') == StrategyKinds.custom:
            raise serializers.ValidationError(
                {'strategy': _('custom strategies are built in code, not in config files')}, code='custom')
        return attrs


class DefaultsSerializer(AgentFieldsMixin):
    strategy = serializers.ChoiceField(choices=StrategyKinds.choices, default=StrategyKinds.continuous_good)
    delta = serializers.FloatField(min_value=0.0, default=0.05)
    band_p = serializers.FloatField(min_value=0.0, max_value=1.0, default=1.0)
    p = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.5)


class PlayerSerializer(AgentFieldsMixin):
    player = serializers.IntegerField(min_value=1)
    target = serializers.IntegerField(min_value=1, required=False)
    script = serializers.CharField(required=False)
    script_file = serializers.CharField(required=False)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs.get('policy') == PolicyKinds.replay and not ('script' in attrs or 'script_file' in attrs):
            raise serializers.ValidationError({'script': _('a replay policy needs a script')}, code='no_script')
        return attrs


class SimulationSerializer(serializers.Serializer):
    horizon = serializers.IntegerField(min_value=1, default=10000)
    record_every = serializers.IntegerField(min_value=1, default=100)
    burn_in = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)
    replications = serializers.IntegerField(min_value=1, default=1)
    band_delta = serializers.FloatField(min_value=0.0, default=0.0)


class BoundsSerializer(serializers.Serializer):
    eta = serializers.FloatField(min_value=0.0, default=0.5)
    tail_n = serializers.IntegerField(min_value=1, default=2000)

    def validate_eta(self, value):
        if not value > 0:
            raise serializers.ValidationError(_('eta must be positive'), code='invalid_eta')
        return value


class CertifySerializer(serializers.Serializer):
    samples = serializers.IntegerField(min_value=0, default=100)
    radius = serializers.FloatField(min_value=0.0, required=False, allow_null=True, default=None)


class DynamicsSerializer(serializers.Serializer):
    player = serializers.IntegerField(min_value=1, default=1)
    nature = serializers.ChoiceField(choices=NatureKinds.choices, default=NatureKinds.others)
    h = serializers.FloatField(default=DEFAULT_STEP)
    T = serializers.FloatField(default=DEFAULT_DURATION)
    u0 = serializers.ListField(child=serializers.FloatField(), required=False)
    samples = serializers.IntegerField(min_value=1, default=64)

    def validate_h(self, value):
        if not 0 < value < 1:
            raise serializers.ValidationError(_('the step size must lie in (0, 1)'), code='invalid_step')
        return value

    def validate(self, attrs):
        if attrs['T'] < attrs['h']:
            raise serializers.ValidationError({'T': _('T is shorter than one step')}, code='short_duration')
        return attrs


class NashGapSerializer(serializers.Serializer):
    deviator = serializers.IntegerField(min_value=1, default=1)
    deviations = serializers.ListField(
        child=serializers.ChoiceField(choices=PolicyKinds.choices),
        default=[PolicyKinds.always_defect, PolicyKinds.always_cooperate, PolicyKinds.exploiter],
    )
    target = serializers.IntegerField(min_value=1, required=False)
    p = serializers.FloatField(min_value=0.0, max_value=1.0, default=0.5)
    tolerance = serializers.FloatField(min_value=0.0, default=0.0)


SECTIONS = {
    'defaults': DefaultsSerializer,
    'simulation': SimulationSerializer,
    'bounds': BoundsSerializer,
    'certify': CertifySerializer,
    'dynamics': DynamicsSerializer,
    'nash_gap': NashGapSerializer,
}


class RunConfigSerializer(serializers.Serializer):
    game = GameSerializer()
    defaults = DefaultsSerializer()
    players = PlayerSerializer(many=True, default=list)
    simulation = SimulationSerializer()
    bounds = BoundsSerializer()
    certify = CertifySerializer()
    dynamics = DynamicsSerializer()
    nash_gap = NashGapSerializer()

    def to_internal_value(self, data):
        # absent tables are validated as empty ones so their defaults are filled in
        data = dict(data)
        for section in SECTIONS:
            data.setdefault(section, {})
        return super().to_internal_value(data)

    def validate(self, attrs):
        players = attrs['game']['players']
        seen = set()
        for entry in attrs['players']:
            if entry['player'] > players:
                raise serializers.ValidationError(
                    {'players': _('player %(player)d does not exist') % {'player': entry['player']}},
                    code='unknown_player')
            if entry['player'] in seen:
                raise serializers.ValidationError(
                    {'players': _('player %(player)d is listed twice') % {'player': entry['player']}},
                    code='duplicate_player')
            seen.add(entry['player'])
        for section in ('dynamics', 'nash_gap'):
            player = attrs[section].get('player', attrs[section].get('deviator'))
            if player > players:
                raise serializers.ValidationError(
                    {section: _('player %(player)d does not exist') % {'player': player}}, code='unknown_player')
        return attrs
