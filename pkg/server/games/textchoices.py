from django.db import models
from django.utils.translation import gettext_lazy as _


class Action(models.TextChoices):
    cooperate = 'C', _('Cooperate')
    defect = 'D', _('Defect')


class GameTypes(models.TextChoices):
    nplayer = 'nplayer', _('N-player prisoner\'s dilemma')
    free_riding = 'free_riding', _('Free riding')
    network = 'network', _('Network prisoner\'s dilemma')


class Conditions(models.TextChoices):
    # N-player tables
    dominance = 'i', _('Defection is the dominant action')
    monotonicity = 'ii', _('Defector payoff increases with cooperators')
    pareto_optimal = 'iii', _('Mutual cooperation is Pareto optimal')
    defection_inefficient = 'iv', _('Mutual defection is Pareto inefficient')
    # graphs and network games
    symmetric = 'symmetric', _('Edge set is symmetric')
    self_loop_free = 'self_loop_free', _('Edge set has no self-loops')
    irreducible = 'irreducible', _('Every vertex is reachable')
    adapted = 'adapted', _('Transition matrix is adapted to the graph')
    stochastic = 'stochastic', _('Transition matrix rows sum to one')
    ordering = 'ordering', _('CD < DD < CC < DC')
    edge_pareto = 'edge_pareto', _('Per-edge Pareto condition')
