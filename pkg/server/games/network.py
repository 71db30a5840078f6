'''
Network prisoner's dilemma: players sit on the vertices of a symmetric,
self-loop free, irreducible graph and play a two-player prisoner's dilemma
against each neighbor.

Vertices are numbered 1..M. The payoff vector has one coordinate per
directed edge (i, j), ordered lexicographically, so the coordinates of
player i are contiguous.
'''
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, NamedTuple, Tuple

import networkx as nx
import numpy as np

from .exceptions import (EdgeWeightIdentityError, GameDefinitionError,
                         StationaryDistributionError)
from .profiles import (DEFAULT_ENUMERATION_CAP, as_profile, cooperation_bits,
                       validate_profile_length)
from .reports import ValidationReport
from .textchoices import Action, Conditions, GameTypes

logger = logging.getLogger(__name__)

ROW_SUM_TOL = 1e-12
WEIGHT_IDENTITY_TOL = 1e-10
STATIONARY_TOL = 1e-12
STATIONARY_MAX_ITER = 10 ** 6


@dataclass(frozen=True)
class GameGraph:
    vertex_count: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        if self.vertex_count < 2:
            raise GameDefinitionError('a network game needs at least two vertices')
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if not (1 <= i <= self.vertex_count and 1 <= j <= self.vertex_count):
                raise GameDefinitionError(f'edge ({i}, {j}) leaves the vertex set 1..{self.vertex_count}')
        object.__setattr__(self, 'edges', edges)

    @classmethod
    def from_pairs(cls, vertex_count, pairs, symmetrize=False):
        edges = {tuple(pair) for pair in pairs}
        if symmetrize:
            edges |= {(j, i) for i, j in edges}
        return cls(vertex_count, frozenset(edges))

    @classmethod
    def from_networkx(cls, graph):
        '''
        Relabels the nodes of an undirected networkx graph to 1..M
        '''
        mapping = {node: index for index, node in enumerate(sorted(graph.nodes), start=1)}
        pairs = [(mapping[a], mapping[b]) for a, b in graph.edges]
        return cls.from_pairs(len(mapping), pairs, symmetrize=True)

    @classmethod
    def topology(cls, name, vertex_count):
        builders = {
            'path': nx.path_graph,
            'cycle': nx.cycle_graph,
            'complete': nx.complete_graph,
            # star_graph(n) has n + 1 nodes
            'star': lambda m: nx.star_graph(m - 1),
        }
        if name not in builders:
            raise GameDefinitionError(f'unknown topology {name!r}, expected one of {sorted(builders)}')
        return cls.from_networkx(builders[name](vertex_count))

    @cached_property
    def directed_edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, i):
        return [j for (a, j) in self.directed_edges if a == i]

    def degree(self, i):
        return len(self.neighbors(i))


def validate_graph(g: GameGraph) -> ValidationReport:
    report = ValidationReport()
    for i, j in sorted(g.edges):
        if (j, i) not in g.edges:
            report.add(Conditions.symmetric, (j, i))
        if i == j:
            report.add(Conditions.self_loop_free, (i, i))

    # search from vertex 1 on the symmetric closure of the edge relation
    undirected = nx.Graph()
    undirected.add_nodes_from(range(1, g.vertex_count + 1))
    undirected.add_edges_from((i, j) for i, j in g.edges if i != j)
    reachable = nx.node_connected_component(undirected, 1)
    for vertex in range(1, g.vertex_count + 1):
        if vertex not in reachable:
            report.add(Conditions.irreducible, (1, vertex))
    return report


def uniform_kernel(g: GameGraph) -> np.ndarray:
    '''
    K_ij = 1/N_i on the neighbors of i
    '''
    kernel = np.zeros((g.vertex_count, g.vertex_count))
    for i in range(1, g.vertex_count + 1):
        neighbors = g.neighbors(i)
        for j in neighbors:
            kernel[i - 1, j - 1] = 1.0 / len(neighbors)
    return kernel


def validate_kernel(g: GameGraph, kernel) -> ValidationReport:
    kernel = np.asarray(kernel, dtype=float)
    report = ValidationReport()
    m = g.vertex_count
    if kernel.shape != (m, m):
        raise GameDefinitionError(f'K must be {m}x{m}, got {kernel.shape}')
    for i in range(m):
        row_sum = kernel[i].sum()
        if abs(row_sum - 1.0) > ROW_SUM_TOL:
            report.add(Conditions.stochastic, (i + 1, ), float(row_sum), 1.0)
        for j in range(m):
            value = kernel[i, j]
            if value < 0 or (value > 0) != ((i + 1, j + 1) in g.edges):
                report.add(Conditions.adapted, (i + 1, j + 1), float(value), None)
    return report


def stationary_distribution(kernel, tol=STATIONARY_TOL, max_iter=STATIONARY_MAX_ITER) -> np.ndarray:
    '''
    Power iteration on the lazy chain (K + I)/2, which has the same
    invariant probability as K and is aperiodic.
    '''
    kernel = np.asarray(kernel, dtype=float)
    m = kernel.shape[0]
    lazy = (kernel + np.eye(m)) / 2.0
    pi = np.full(m, 1.0 / m)
    for iteration in range(max_iter):
        residual = np.max(np.abs(pi @ kernel - pi))
        if residual <= tol:
            logger.debug('stationary distribution after %d iterations', iteration)
            if np.any(pi <= 0):
                raise StationaryDistributionError('invariant probability has a zero entry; K is not irreducible')
            return pi
        pi = pi @ lazy
        pi /= pi.sum()
    logger.error('power iteration did not reach %g within %d iterations', tol, max_iter)
    raise StationaryDistributionError(f'no invariant probability within {max_iter} iterations (residual {residual:g})')


@dataclass(frozen=True, eq=False)
class EdgeWeights:
    pi: np.ndarray
    omega: Dict[Tuple[int, int], float]

    @property
    def reversible(self):
        return all(abs(w - self.omega.get((j, i), 0.0)) <= ROW_SUM_TOL for (i, j), w in self.omega.items())


def edge_weights(kernel, pi, tol=WEIGHT_IDENTITY_TOL) -> EdgeWeights:
    '''
    omega_ij = pi_i K_ij; fails loudly unless sum_j omega_ij = sum_j omega_ji = pi_i
    '''
    kernel = np.asarray(kernel, dtype=float)
    pi = np.asarray(pi, dtype=float)
    matrix = pi[:, None] * kernel
    out_sums = matrix.sum(axis=1)
    in_sums = matrix.sum(axis=0)
    bad = np.flatnonzero((np.abs(out_sums - pi) > tol) | (np.abs(in_sums - pi) > tol))
    if bad.size:
        i = int(bad[0])
        raise EdgeWeightIdentityError(
            f'vertex {i + 1}: out-weight {out_sums[i]:.17g}, in-weight {in_sums[i]:.17g}, pi {pi[i]:.17g}'
        )
    omega = {
        (int(i) + 1, int(j) + 1): float(matrix[i, j])
        for i, j in zip(*np.nonzero(kernel > 0))
    }
    return EdgeWeights(pi=pi, omega=omega)


class PairPayoffs(NamedTuple):
    CD: float
    DD: float
    CC: float
    DC: float

    def lookup(self, own, other):
        if own == Action.cooperate:
            return self.CC if other == Action.cooperate else self.CD
        return self.DC if other == Action.cooperate else self.DD

    def grid(self):
        # indexed [own cooperates][other cooperates]
        return np.array([[self.DD, self.DC], [self.CD, self.CC]])


@dataclass(frozen=True, eq=False)
class NetworkGame:
    graph: GameGraph
    kernel: np.ndarray
    weights: EdgeWeights
    payoffs: PairPayoffs

    game_type = GameTypes.network

    @classmethod
    def build(cls, graph: GameGraph, payoffs, kernel='uniform'):
        if isinstance(kernel, str):
            if kernel != 'uniform':
                raise GameDefinitionError(f'unknown kernel rule {kernel!r}')
            kernel = uniform_kernel(graph)
        graph_report = validate_graph(graph)
        if not graph_report.passed:
            raise GameDefinitionError(f'graph violates the network assumptions: {graph_report.as_dict()}')
        kernel = np.asarray(kernel, dtype=float)
        kernel_report = validate_kernel(graph, kernel)
        if not kernel_report.passed:
            raise GameDefinitionError(f'K is not a transition matrix adapted to the graph: {kernel_report.as_dict()}')
        pi = stationary_distribution(kernel)
        return cls(
            graph=graph,
            kernel=kernel,
            weights=edge_weights(kernel, pi),
            payoffs=PairPayoffs(*payoffs) if not isinstance(payoffs, dict) else PairPayoffs(**payoffs),
        )

    @property
    def players(self):
        return self.graph.vertex_count

    @cached_property
    def edge_index(self) -> Dict[Tuple[int, int], int]:
        return {edge: index for index, edge in enumerate(self.graph.directed_edges)}

    @property
    def dimension(self):
        return len(self.graph.directed_edges)

    @property
    def coordinate_names(self):
        return [f'u_{i}_{j}' for i, j in self.graph.directed_edges]

    @property
    def pi(self):
        return self.weights.pi

    @cached_property
    def v_star(self):
        return np.full(self.dimension, self.payoffs.CC)

    def payoff(self, profile) -> np.ndarray:
        return network_payoff(self, profile)

    def payoff_table(self, cap=DEFAULT_ENUMERATION_CAP) -> np.ndarray:
        if cap in self._tables:
            return self._tables[cap]
        bits = cooperation_bits(self.players, cap).astype(np.intp)
        edges = np.array(self.graph.directed_edges) - 1
        table = self.payoffs.grid()[bits[:, edges[:, 0]], bits[:, edges[:, 1]]]
        table.setflags(write=False)
        self._tables[cap] = table
        return table

    @cached_property
    def _tables(self):
        return {}

    @cached_property
    def mu_matrix(self) -> np.ndarray:
        '''
        Row i - 1 holds omega_ij on u_ij and -omega_ji on u_ji
        '''
        matrix = np.zeros((self.players, self.dimension))
        for (i, j), index in self.edge_index.items():
            matrix[i - 1, index] += self.weights.omega[(i, j)]
            matrix[j - 1, index] -= self.weights.omega[(i, j)]
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def player_payoff_matrix(self) -> np.ndarray:
        '''
        Row i - 1 maps a state to the mean payoff sum_j K_ij u_ij
        '''
        matrix = np.zeros((self.players, self.dimension))
        for (i, j), index in self.edge_index.items():
            matrix[i - 1, index] = self.kernel[i - 1, j - 1]
        matrix.setflags(write=False)
        return matrix

    def mu(self, player, u):
        return mu_network(self, player, u)


def validate_network(game: NetworkGame) -> ValidationReport:
    report = validate_graph(game.graph)
    report.merge(validate_kernel(game.graph, game.kernel))

    p = game.payoffs
    if not p.CD < p.DD < p.CC < p.DC:
        report.add(Conditions.ordering, ('CD', 'DD', 'CC', 'DC'), None, None)

    omega = game.weights.omega
    # (i, j) and (j, i) weigh CD and DC differently unless K is reversible
    for i, j in game.graph.directed_edges:
        w_ij, w_ji = omega[(i, j)], omega[(j, i)]
        mixed = w_ij * p.CD + w_ji * p.DC
        if not (w_ij + w_ji) * p.DD < mixed:
            report.add(Conditions.edge_pareto, (i, j), (w_ij + w_ji) * p.DD, mixed)
        if not mixed < (w_ij + w_ji) * p.CC:
            report.add(Conditions.edge_pareto, (i, j), mixed, (w_ij + w_ji) * p.CC)
    report.flags['reversible'] = game.weights.reversible
    return report


def network_payoff(game: NetworkGame, s) -> np.ndarray:
    profile = as_profile(s)
    validate_profile_length(game, profile)
    return np.array([
        game.payoffs.lookup(profile[i - 1], profile[j - 1])
        for i, j in game.graph.directed_edges
    ])


def mean_payoff(game: NetworkGame, u, i: int) -> float:
    '''
    sum_j K_ij u_ij, for pure payoffs and running averages alike
    '''
    return float(game.player_payoff_matrix[i - 1] @ np.asarray(u, dtype=float))


def mu_network(game: NetworkGame, i: int, u) -> float:
    '''
    mu^i(u) = sum_{j in Neigh(i)} omega_ij u_ij - omega_ji u_ji
    '''
    u = np.asarray(u, dtype=float)
    index = game.edge_index
    omega = game.weights.omega
    return float(sum(
        omega[(i, j)] * u[index[(i, j)]] - omega[(j, i)] * u[index[(j, i)]]
        for j in game.graph.neighbors(i)
    ))
