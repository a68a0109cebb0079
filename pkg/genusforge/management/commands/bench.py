import random
from time import time

from genusforge.abelian import ASTower
from genusforge.cli import GenusForgeCommand
from genusforge.field import prime_power
from genusforge.verify import count_points_abelian


def random_tower(q, rng, n=2, bound=30):
    """Two-point tower with n layers and random increasing entries prime to p."""
    p, _ = prime_power(q)
    candidates = [value for value in range(1, bound + 1) if value % p]
    i_seq = sorted(rng.sample(candidates, n))
    j_seq = sorted(rng.sample(candidates, n))
    return ASTower(p, i_seq, j_seq, base_q=q)


class Command(GenusForgeCommand):
    help = 'Time the fast abelian point counter over F_{q^m}.'
    name = 'bench'

    def add_command_arguments(self, parser):
        parser.add_argument('--q', type=int, required=True)
        parser.add_argument('--m', type=int, default=1)
        parser.add_argument('--repeat', type=int, default=3)

    def run(self, config, options):
        tower = random_tower(config.q, random.Random(config.seed))
        timings = []
        for _ in range(max(1, options['repeat'])):
            start = time()
            N = count_points_abelian(tower, options['m'], threads=config.threads, budget=config.fast_budget)
            timings.append(time() - start)
        self.stdout.write('q=%s m=%s i=%s j=%s N=%s best=(%.3f) mean=(%.3f)' % (
            config.q, options['m'], list(tower.i_seq), list(tower.j_seq), N, min(timings),
            sum(timings) / len(timings)))
