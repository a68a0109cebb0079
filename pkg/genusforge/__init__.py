__version__ = '0.1'

# REGISTER
FAMILIES = {}


# Constructor decorators
def family(name):
    """Register a constructor under a certificate family tag"""
    def register(func):
        FAMILIES[name] = func
        return func
    return register
