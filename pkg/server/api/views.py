import logging

from rest_framework import generics, status
from rest_framework.response import Response

from approachability.bounds import blackwell_bound_i, blackwell_bound_ii
from approachability.certify import bcor_certify
from games.exceptions import EnumerationCapExceeded, GameDefinitionError
from lab.config import RunConfig, build_agent
from lab.emit import to_jsonable
from lab.exceptions import ConfigError
from lab.serializers import DefaultsSerializer
from strategies.exceptions import StrategyDefinitionError

from .serializers import BoundsSerializer, CertifySerializer, ValidateSerializer

logger = logging.getLogger(__name__)


def run_config(game):
    defaults = DefaultsSerializer(data={})
    defaults.is_valid(raise_exception=True)
    return RunConfig(document={'game': game, 'defaults': defaults.validated_data, 'players': []})


class ValidateView(generics.GenericAPIView):
    serializer_class = ValidateSerializer

    def post(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        config = run_config(serializer.validated_data['game'])
        try:
            report = config.validate()
        except (GameDefinitionError, ConfigError) as error:
            return Response({'detail': str(error)}, status=status.HTTP_400_BAD_REQUEST)
        return Response(to_jsonable({'game': config.game_type.value, **report.as_dict()}))


class CertifyView(generics.GenericAPIView):
    serializer_class = CertifySerializer

    def post(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        config = run_config(serializer.validated_data['game'])
        try:
            game = config.game
            strat = build_agent(serializer.validated_data['strategy'], config.document['defaults'],
                                config.base_dir, config.players)
            certificate = bcor_certify(game, strat)
        except (GameDefinitionError, EnumerationCapExceeded, StrategyDefinitionError) as error:
            return Response({'detail': str(error)}, status=status.HTTP_400_BAD_REQUEST)
        logger.info('certified player %d: %s', strat.player, certificate.certified)
        return Response(to_jsonable(certificate.as_dict()))


class BoundsView(generics.GenericAPIView):
    serializer_class = BoundsSerializer

    def post(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        data = serializer.validated_data
        return Response({
            'boundI': blackwell_bound_i(data['e_norm'], data['l_norm'], data['eta'], data['n']),
            'boundII': blackwell_bound_ii(data['e_norm'], data['eta'], data['n']),
        })
