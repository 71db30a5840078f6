class SimulationConfigError(ValueError):
    '''
    A run cannot be set up from the given game and assignments
    '''
