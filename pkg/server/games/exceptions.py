class GameDefinitionError(ValueError):
    '''
    A game cannot be built from the given numbers
    '''


class EnumerationCapExceeded(ValueError):
    '''
    Exact enumeration of {C,D}^M was refused
    '''

    def __init__(self, players, cap):
        self.players = players
        self.cap = cap
        super().__init__(f'{players} players exceed the enumeration cap of {cap}')


class StationaryDistributionError(RuntimeError):
    pass


class EdgeWeightIdentityError(RuntimeError):
    '''
    Row and column sums of the edge weights disagree with pi
    '''
