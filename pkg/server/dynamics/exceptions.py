class RetractionDidNotConverge(RuntimeError):
    def __init__(self, gap, iterations):
        self.gap = gap
        self.iterations = iterations
        super().__init__(f'nearest point not found within {iterations} iterations (gap {gap:g})')


class StepSizeError(ValueError):
    '''
    Projected Euler needs 0 < h < 1 and T >= h
    '''


class SelectionError(ValueError):
    '''
    Nature's mixture cannot be formed from the given opponents
    '''
