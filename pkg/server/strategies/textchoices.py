from django.db import models
from django.utils.translation import gettext_lazy as _


class StrategyKinds(models.TextChoices):
    threshold_good = 'threshold_good', _('Threshold delta-good')
    continuous_good = 'continuous_good', _('Continuous delta-good')
    constant = 'constant', _('Constant mixture')
    custom = 'custom', _('Custom map of mu')


class PolicyKinds(models.TextChoices):
    always_defect = 'always_defect', _('Always defect')
    always_cooperate = 'always_cooperate', _('Always cooperate')
    iid_random = 'iid_random', _('Independent coin with P(C) = p')
    exploiter = 'exploiter', _('Defects until ahead of the target by delta')
    replay = 'replay', _('Scripted actions')


GOOD_KINDS = (StrategyKinds.threshold_good, StrategyKinds.continuous_good)
