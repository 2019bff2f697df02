from pathlib import Path

from django.core.management.base import CommandError

from uncertainty_app.data.dataset_io import load_dataset
from uncertainty_app.data.key_value_io import write_key_values
from uncertainty_app.management.base import PipelineCommand, add_training_arguments
from uncertainty_app.success_messages import ABLATION_WRITTEN_MESSAGE
from uncertainty_app.training.pipeline import run_ablation


def parse_seeds(text):
    try:
        seeds = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise CommandError(f'--seeds expects comma separated integers, got {text!r}.') from None
    if not seeds:
        raise CommandError('--seeds needs at least one seed.')
    return seeds


# Runs the full pipeline twice per seed, with lambda as configured and with
# lambda=0, and writes both mAPs per seed plus their means and the win count.
class Command(PipelineCommand):
    help = 'Cross-modal test mAP with and without the uncertainty loss, one full run per seed.'

    def add_arguments(self, parser):
        parser.add_argument('--data', required=True, help='Dataset directory.')
        parser.add_argument('--out', required=True, help='Output key=value file.')
        parser.add_argument('--seeds', default='0,1,2,3,4', help='Comma separated seeds.')
        add_training_arguments(parser)
        parser.add_argument('--lambda', dest='lam', type=float, help='Override the KL weight.')

    def run_command(self, **options):
        seeds = parse_seeds(options['seeds'])
        dataset = load_dataset(options['data'])
        cfg = self.resolve_config(options)
        rows = run_ablation(dataset, cfg, seeds)

        pairs = []
        for row in rows:
            pairs.append((f'seed{row.seed}.map_uncertainty', repr(row.map_with_uncertainty)))
            pairs.append((f'seed{row.seed}.map_plain', repr(row.map_without_uncertainty)))
            self.stdout.write(f'seed {row.seed}: mAP {row.map_with_uncertainty:.4f} with uncertainty, '
                              f'{row.map_without_uncertainty:.4f} without')
        mean_with = sum(row.map_with_uncertainty for row in rows) / len(rows)
        mean_plain = sum(row.map_without_uncertainty for row in rows) / len(rows)
        wins = sum(row.map_with_uncertainty > row.map_without_uncertainty for row in rows)
        pairs += [('mean.map_uncertainty', repr(mean_with)), ('mean.map_plain', repr(mean_plain)),
                  ('wins', wins)]
        Path(options['out']).parent.mkdir(parents=True, exist_ok=True)
        write_key_values(options['out'], pairs)
        self.stdout.write(self.style.SUCCESS(ABLATION_WRITTEN_MESSAGE.format(path=options['out'])))
