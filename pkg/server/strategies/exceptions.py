class StrategyDefinitionError(ValueError):
    pass


class ReplayExhausted(RuntimeError):
    '''
    A scripted policy was asked for more actions than its script holds
    '''

    def __init__(self, player, length):
        self.player = player
        self.length = length
        super().__init__(f'replay script of player {player} has only {length} actions')
