import csv
import io

from genusforge.cli import GenusForgeCommand, write_output
from genusforge.verify import TABLE_COLUMNS, lower_bound_table


class Command(GenusForgeCommand):
    help = 'Tabulate the best verified lower bounds for a range of genera as CSV.'
    name = 'table'

    def add_command_arguments(self, parser):
        parser.add_argument('--q', type=int, required=True)
        parser.add_argument('--from', type=int, required=True, dest='from')
        parser.add_argument('--to', type=int, required=True)
        parser.add_argument('--families', default='abelian,toric',
                            help='comma separated: abelian, toric, tame, tame-records or all')
        parser.add_argument('--output')

    def run(self, config, options):
        families = [name.strip() for name in config.families.split(',') if name.strip()]
        rows = lower_bound_table(config.q, config.genus_range[0], config.genus_range[1], families,
                                 threads=config.threads, naive_budget=config.naive_budget,
                                 fast_budget=config.fast_budget)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=TABLE_COLUMNS, extrasaction='ignore', lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
        write_output(self, buffer.getvalue(), config.output)
