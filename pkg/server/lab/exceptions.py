class ConfigError(ValueError):
    '''
    A run configuration cannot be read or is invalid
    '''

    def __init__(self, message, errors=None):
        self.errors = errors
        super().__init__(message)
