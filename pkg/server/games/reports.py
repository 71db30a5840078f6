from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: Tuple[Any, ...]
    lhs: float = None
    rhs: float = None

    def as_dict(self):
        return {
            'condition': self.condition,
            'witness': list(self.witness),
            'lhs': self.lhs,
            'rhs': self.rhs,
        }


@dataclass
class ValidationReport:
    '''
    Outcome of a structural check.

    `violations` fail the report. `flags` records conditions that are only
    reported (condition (iv), reversibility), with their witnesses kept in
    `advisories`.
    '''
    violations: List[Violation] = field(default_factory=list)
    flags: Dict[str, bool] = field(default_factory=dict)
    advisories: List[Violation] = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def add(self, condition, witness, lhs=None, rhs=None):
        self.violations.append(Violation(str(condition), tuple(witness), lhs, rhs))

    def advise(self, condition, witness, lhs=None, rhs=None):
        self.advisories.append(Violation(str(condition), tuple(witness), lhs, rhs))

    def merge(self, other):
        self.violations.extend(other.violations)
        self.advisories.extend(other.advisories)
        self.flags.update(other.flags)
        return self

    def failed(self, condition):
        return [v for v in self.violations if v.condition == str(condition)]

    def as_dict(self):
        return {
            'passed': self.passed,
            'violations': [v.as_dict() for v in self.violations],
            'flags': dict(self.flags),
            'advisories': [v.as_dict() for v in self.advisories],
        }
