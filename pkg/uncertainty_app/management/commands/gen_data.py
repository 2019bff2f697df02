from uncertainty_app.data.dataset import NOISE_MODES
from uncertainty_app.data.dataset_io import save_dataset
from uncertainty_app.data.generator import generate
from uncertainty_app.management.base import PipelineCommand, add_seed_argument
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.success_messages import DATASET_WRITTEN_MESSAGE


# Writes a seeded synthetic sketch and shape dataset to a directory.
class Command(PipelineCommand):
    help = 'Generate a synthetic sketch/shape dataset with optional noisy sketches.'

    def add_arguments(self, parser):
        parser.add_argument('--out', required=True, help='Output directory.')
        add_seed_argument(parser)
        parser.add_argument('--classes', type=int, default=10)
        parser.add_argument('--n-train', type=int, default=50, help='Training sketches per class.')
        parser.add_argument('--n-test', type=int, default=30, help='Test sketches per class.')
        parser.add_argument('--n-shape-train', type=int, default=10, help='Training shapes per class.')
        parser.add_argument('--n-shape-test', type=int, default=5, help='Test shapes per class.')
        parser.add_argument('--dim', type=int, default=16, help='Feature dimension of sketches and views.')
        parser.add_argument('--views', type=int, default=12, help='Views per shape.')
        parser.add_argument('--noise-frac', type=float, default=0.0)
        parser.add_argument('--noise-mode', choices=NOISE_MODES, default='ambiguous')

    def run_command(self, **options):
        seed = self.resolve_seed(options)
        dataset = generate(options['classes'], options['n_train'], options['n_test'], options['dim'],
                           options['views'], options['noise_frac'], options['noise_mode'], Rng(seed),
                           n_shape_train=options['n_shape_train'], n_shape_test=options['n_shape_test'])
        self.stdout.write('config: ' + ' '.join(f'{key}={value}' for key, value in dataset.manifest.to_key_values()))
        self.stdout.write(f'seed: {seed}')
        save_dataset(dataset, options['out'])
        self.stdout.write(self.style.SUCCESS(DATASET_WRITTEN_MESSAGE.format(path=options['out'])))
