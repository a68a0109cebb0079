from django.core.management.base import CommandError

from genusforge.certificate import CurveCertificate
from genusforge.cli import EXIT_USAGE, EXIT_VERIFICATION, GenusForgeCommand, write_output
from genusforge.verify import verify_certificate


class Command(GenusForgeCommand):
    help = 'Re-validate a certificate and append the verification report.'
    name = 'verify'

    def add_command_arguments(self, parser):
        parser.add_argument('certificate', metavar='CERT')
        parser.add_argument('--depth', type=int)
        parser.add_argument('--output', help='write the verified certificate here instead of over CERT')

    def run(self, config, options):
        path = options['certificate']
        try:
            with open(path) as source:
                cert = CurveCertificate.from_json(source.read())
        except OSError as e:
            raise CommandError('error=Usage message="%s"' % e, returncode=EXIT_USAGE)
        report = verify_certificate(cert, depth=config.depth, threads=config.threads,
                                    naive_budget=config.naive_budget, fast_budget=config.fast_budget)
        cert.verification = report.to_dict()
        write_output(self, cert.to_json(), config.output or path)
        if not report.ok:
            raise CommandError('error=VerificationFailed family=%s genus=%s q=%s' % (cert.family, cert.genus, cert.q),
                               returncode=EXIT_VERIFICATION)
