import json

from django.core.management.base import CommandError

from genusforge.cli import EXIT_USAGE, GenusForgeCommand
from genusforge.exceptions import InvalidParameters
from genusforge.lattice import LatticePolygon, arnold_check, pick_data


class Command(GenusForgeCommand):
    help = 'Lattice polygon utilities on a JSON list of [i, j] points.'
    name = 'polygon'

    def add_command_arguments(self, parser):
        parser.add_argument('--op', choices=('hull', 'pick', 'arnold'), required=True)
        parser.add_argument('--input', required=True)

    def load_points(self, path):
        try:
            with open(path) as source:
                data = json.load(source)
        except (OSError, ValueError) as e:
            raise CommandError('error=Usage message="%s"' % e, returncode=EXIT_USAGE)
        if isinstance(data, dict):
            data = data.get('points', data.get('vertices'))
        if not isinstance(data, list) or not all(isinstance(point, list) and len(point) == 2 for point in data):
            raise InvalidParameters('input must be a list of [i, j] pairs')
        return [tuple(point) for point in data]

    def run(self, config, options):
        polygon = LatticePolygon.hull(self.load_points(options['input']))
        if options['op'] == 'hull':
            result = {'vertices': polygon.to_list()}
        elif options['op'] == 'pick':
            result = dict(pick_data(polygon)._asdict())
        else:
            result = {
                'vertices': len(polygon),
                'area2': polygon.area2(),
                'holds': arnold_check(polygon),
            }
        self.stdout.write(json.dumps(result, sort_keys=True))
