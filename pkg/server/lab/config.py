'''
Run configuration: a TOML file validated by the serializers, turned into
games, strategies and simulation settings.
'''
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np
import toml
from django.conf import settings

from engine.simulation import SimConfig
from games.network import (GameGraph, NetworkGame, PairPayoffs, uniform_kernel,
                           validate_graph, validate_kernel, validate_network)
from games.nplayer import NPlayerPayoffTable, free_riding_game, validate_npd
from games.textchoices import GameTypes
from strategies.payoff_based import PayoffBasedStrategy
from strategies.policies import OpponentPolicy, load_replay_script
from strategies.textchoices import PolicyKinds

from .exceptions import ConfigError
from .serializers import SECTIONS, RunConfigSerializer

logger = logging.getLogger(__name__)


def read_document(path) -> dict:
    path = Path(path)
    try:
        return toml.loads(path.read_text())
    except FileNotFoundError:
        raise ConfigError(f'config file {path} does not exist')
    except toml.TomlDecodeError as error:
        raise ConfigError(f'{path} is not valid TOML: {error}')


def validate_document(document) -> dict:
    serializer = RunConfigSerializer(data=document)
    if not serializer.is_valid():
        raise ConfigError(f'invalid configuration: {dict(serializer.errors)}', errors=serializer.errors)
    return serializer.validated_data


def build_graph(game) -> GameGraph:
    if 'edges' in game:
        return GameGraph.from_pairs(game['players'], game['edges'], symmetrize=game['symmetrize'])
    return GameGraph.topology(game['topology'], game['players'])


def build_kernel(game, graph) -> np.ndarray:
    kernel = game['kernel']
    if isinstance(kernel, str):
        return uniform_kernel(graph)
    try:
        return np.array(kernel, dtype=float)
    except ValueError:
        raise ConfigError('the kernel is not a numeric matrix')


def build_agent(entry, defaults, base_dir, players):
    player = entry['player']
    if 'policy' in entry:
        kind = PolicyKinds(entry['policy'])
        script = entry.get('script', '')
        if 'script_file' in entry:
            script = load_replay_script(base_dir / entry['script_file'])
        return OpponentPolicy(
            player=player,
            kind=kind,
            p=entry.get('p', defaults['p']),
            delta=entry.get('delta', 0.0),
            target=entry.get('target', player % players + 1),
            script=script,
        )
    return PayoffBasedStrategy(
        player=player,
        kind=entry.get('strategy', defaults['strategy']),
        delta=entry.get('delta', defaults['delta']),
        band_p=entry.get('band_p', defaults['band_p']),
        p=entry.get('p', defaults['p']),
    )


@dataclass(frozen=True, eq=False)
class RunConfig:
    '''
    `document` is the validated configuration with every default filled
    in; it is what run manifests echo.
    '''
    document: dict
    base_dir: Path = field(default_factory=Path.cwd)

    @property
    def game_document(self):
        return self.document['game']

    @property
    def game_type(self):
        return GameTypes(self.game_document['type'])

    @property
    def players(self):
        return self.game_document['players']

    @cached_property
    def graph(self) -> GameGraph:
        return build_graph(self.game_document)

    @cached_property
    def game(self):
        game = self.game_document
        if self.game_type == GameTypes.nplayer:
            return NPlayerPayoffTable(game['players'], tuple(game['vC']), tuple(game['vD']))
        if self.game_type == GameTypes.free_riding:
            return free_riding_game(game['f'], game['c'], game['players'])
        return NetworkGame.build(self.graph, PairPayoffs(**game['payoffs']), build_kernel(game, self.graph))

    def validate(self):
        '''
        Structural report for the configured game; network definitions
        are checked graph first, so a broken graph is reported rather than raised
        '''
        if self.game_type != GameTypes.network:
            return validate_npd(self.game)
        report = validate_graph(self.graph)
        if not report.passed:
            return report
        report.merge(validate_kernel(self.graph, build_kernel(self.game_document, self.graph)))
        if not report.passed:
            return report
        return validate_network(self.game)

    def assignments(self, delta=None):
        '''
        One agent per player; `delta` overrides the delta of every good strategy
        '''
        entries = {entry['player']: entry for entry in self.document['players']}
        agents = []
        for player in range(1, self.players + 1):
            entry = dict(entries.get(player, {'player': player}))
            if delta is not None and 'policy' not in entry:
                entry['delta'] = delta
            agents.append(build_agent(entry, self.document['defaults'], self.base_dir, self.players))
        return tuple(agents)

    def sim_config(self, seed, horizon=None, delta=None) -> SimConfig:
        simulation = self.document['simulation']
        horizon = horizon or simulation['horizon']
        burn_in = simulation['burn_in']
        if burn_in is not None and burn_in >= horizon:
            logger.warning('burn-in %d does not fit a horizon of %d, using %d', burn_in, horizon, horizon // 10)
            burn_in = None
        return SimConfig(
            game=self.game,
            assignments=self.assignments(delta),
            horizon=horizon,
            seed=seed,
            record_every=min(simulation['record_every'], horizon),
            burn_in=burn_in,
            band_delta=simulation['band_delta'],
            cap=settings.SMALE_LAB_ENUMERATION_CAP,
        )

    def with_overrides(self, **sections):
        document = dict(self.document)
        for name, values in sections.items():
            merged = {**document[name], **{k: v for k, v in values.items() if v is not None}}
            serializer = SECTIONS[name](data=merged)
            if not serializer.is_valid():
                raise ConfigError(f'invalid override of [{name}]: {dict(serializer.errors)}', errors=serializer.errors)
            document[name] = serializer.validated_data
        return replace(self, document=document)


def load_config(path) -> RunConfig:
    path = Path(path)
    config = RunConfig(document=validate_document(read_document(path)), base_dir=path.parent)
    logger.debug('loaded %s game from %s', config.game_type.value, path)
    return config
