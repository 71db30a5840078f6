class NoRowsPastHorizon(ValueError):
    '''
    A trace has no recorded row at or after the requested step
    '''

    def __init__(self, seed, n):
        self.seed = seed
        self.n = n
        super().__init__(f'trace with seed {seed} has no recorded row at or after n = {n}')


class BoundParameterError(ValueError):
    '''
    A tail bound or tail frequency was asked for with eta, n or |E| out of range
    '''
