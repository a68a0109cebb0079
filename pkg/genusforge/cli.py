"""
Command line front end.

The commands are Django management commands of the ``genusforge`` app, so
they also run as ``django-admin construct ...`` inside a project; ``run``
dispatches them standalone and turns errors into exit codes.
"""
import sys
from collections import namedtuple

from django.core.exceptions import ImproperlyConfigured
from django.core.management import load_command_class
from django.core.management.base import BaseCommand, CommandError, handle_default_options

from genusforge import conf
from genusforge.exceptions import GenusForgeError, InfeasibleGenus, InvalidParameters
from genusforge.field import prime_power

COMMANDS = ('construct', 'verify', 'table', 'polygon', 'bench')

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64

USAGE = 'usage: genusforge {%s} [options]' % ','.join(COMMANDS)

CliConfig = namedtuple('CliConfig', 'command q genus genus_range families depth naive_budget fast_budget output '
                                    'threads seed')


def add_common_arguments(parser):
    parser.add_argument('--threads', type=int, help='worker cap for the counting kernels')
    parser.add_argument('--naive-budget', type=int, dest='naive_budget', help='naive counter work units')
    parser.add_argument('--fast-budget', type=int, dest='fast_budget', help='fast counter field size')
    parser.add_argument('--seed', type=int, default=0, help='seed for randomized inputs')


def cli_config(command, options):
    """Validated CliConfig from parsed command options."""
    config = CliConfig(
        command=command,
        q=options.get('q'),
        genus=options.get('genus'),
        genus_range=(options['from'], options['to']) if options.get('from') is not None else None,
        families=options.get('families'),
        depth=options.get('depth'),
        naive_budget=options.get('naive_budget'),
        fast_budget=options.get('fast_budget'),
        output=options.get('output'),
        threads=options.get('threads'),
        seed=options.get('seed'),
    )
    if config.q is not None:
        prime_power(config.q)
    if config.genus is not None and config.genus < 0:
        raise InvalidParameters('genus must be nonnegative', genus=config.genus)
    if config.depth is not None and config.depth < 0:
        raise InvalidParameters('depth must be nonnegative', depth=config.depth)
    for name in ('naive_budget', 'fast_budget', 'threads'):
        value = getattr(config, name)
        if value is not None and value < 1:
            raise InvalidParameters('%s must be positive' % name.replace('_', '-'), **{name: value})
    return config


def command_error(error):
    """CommandError carrying the exit code of a library error."""
    if isinstance(error, InfeasibleGenus):
        code = EXIT_INFEASIBLE
    elif isinstance(error, InvalidParameters):
        code = EXIT_USAGE
    else:
        code = EXIT_VERIFICATION
    return CommandError(error.describe(), returncode=code)


class GenusForgeCommand(BaseCommand):
    """Base for the genusforge commands: common options and error mapping."""
    requires_system_checks = []
    name = None

    def add_arguments(self, parser):
        self.add_command_arguments(parser)
        add_common_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        try:
            config = cli_config(self.name, options)
            self.run(config, options)
        except GenusForgeError as e:
            raise command_error(e)
        except ImproperlyConfigured as e:
            raise CommandError('error=ImproperlyConfigured message="%s"' % e, returncode=EXIT_USAGE)

    def run(self, config, options):
        raise NotImplementedError('subclasses of GenusForgeCommand must provide a run() method')


def write_output(command, text, path=None):
    if path:
        with open(path, 'w') as output:
            output.write(text)
    else:
        command.stdout.write(text, ending='')


def run(argv, stdout=None, stderr=None):
    stderr = stderr or sys.stderr
    argv = list(argv)
    if not argv or argv[0] not in COMMANDS:
        stderr.write('error=Usage message="%s"\n' % USAGE)
        return EXIT_USAGE
    conf.setup()
    name = argv[0]
    command = load_command_class('genusforge', name)
    parser = command.create_parser('genusforge', name)
    try:
        options = parser.parse_args(argv[1:])
    except CommandError as e:
        stderr.write('error=Usage message="%s"\n' % e)
        return EXIT_USAGE
    handle_default_options(options)
    cmd_options = vars(options)
    args = cmd_options.pop('args', ())
    if stdout is not None:
        cmd_options['stdout'] = stdout
    cmd_options['stderr'] = stderr
    try:
        command.execute(*args, **cmd_options)
    except CommandError as e:
        stderr.write('%s\n' % e)
        return e.returncode
    except GenusForgeError as e:
        error = command_error(e)
        stderr.write('%s\n' % error)
        return error.returncode
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))
