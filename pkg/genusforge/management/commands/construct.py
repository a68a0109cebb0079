import logging

from genusforge import FAMILIES
from genusforge.cli import GenusForgeCommand, write_output
from genusforge.exceptions import BudgetExceeded, InfeasibleGenus
from genusforge.verify import verify_certificate

logger = logging.getLogger('genusforge.cli')


class Command(GenusForgeCommand):
    help = 'Construct a curve of the given genus and write its certificate.'
    name = 'construct'

    def add_command_arguments(self, parser):
        parser.add_argument('--q', type=int, required=True)
        parser.add_argument('--genus', type=int, required=True)
        parser.add_argument('--family', choices=('abelian', 'toric', 'tame', 'auto'), default='auto')
        parser.add_argument('--fallback', action='store_true',
                            help='let the toric family fall back to a hyperelliptic curve')
        parser.add_argument('--output')

    def verified_points(self, cert, config):
        try:
            report = verify_certificate(cert, depth=1, threads=config.threads, naive_budget=config.naive_budget,
                                        fast_budget=config.fast_budget)
        except BudgetExceeded:
            return None
        return report.count(1) if report.ok else None

    def auto(self, config, fallback):
        try:
            toric = FAMILIES['toric'](config.q, config.genus, allow_fallback=fallback)
        except InfeasibleGenus as e:
            logger.info('no toric curve of genus %s over F_%s, using abelian: %s', config.genus, config.q, e)
            return FAMILIES['abelian'](config.q, config.genus)
        abelian = FAMILIES['abelian'](config.q, config.genus)
        toric_points = self.verified_points(toric, config)
        abelian_points = self.verified_points(abelian, config)
        if toric_points is not None and (abelian_points is None or toric_points >= abelian_points):
            return toric
        return abelian

    def run(self, config, options):
        family = options['family']
        if family == 'auto':
            cert = self.auto(config, options['fallback'])
        elif family == 'toric':
            cert = FAMILIES['toric'](config.q, config.genus, allow_fallback=options['fallback'])
        else:
            cert = FAMILIES[family](config.q, config.genus)
        write_output(self, cert.stamp().to_json(), config.output)
