"""
Error hierarchy shared by the construction, counting and verification code.

Every error carries an ``identifier`` that the command line front end prints
on stderr as ``error=<identifier>`` followed by the ``detail`` pairs.
"""


class GenusForgeError(Exception):
    identifier = 'GenusForgeError'

    def __init__(self, message='', **detail):
        super(GenusForgeError, self).__init__(message)
        self.detail = detail

    def describe(self):
        parts = ['error=%s' % self.identifier]
        parts.extend('%s=%s' % (key, self.detail[key]) for key in sorted(self.detail))
        message = str(self)
        if message:
            parts.append('message="%s"' % message)
        return ' '.join(parts)


class InvalidParameters(GenusForgeError, ValueError):
    identifier = 'InvalidParameters'


class DivisionByZero(GenusForgeError, ZeroDivisionError):
    identifier = 'DivisionByZero'


class DegeneratePolygon(InvalidParameters):
    identifier = 'DegeneratePolygon'


class UnsupportedFamily(InvalidParameters):
    identifier = 'UnsupportedFamily'


class InfeasibleGenus(GenusForgeError):
    identifier = 'InfeasibleGenus'


class BudgetExceeded(GenusForgeError):
    identifier = 'BudgetExceeded'


class InconsistentCounts(GenusForgeError):
    identifier = 'InconsistentCounts'
