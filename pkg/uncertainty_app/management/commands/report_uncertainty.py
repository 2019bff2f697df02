from uncertainty_app.analysis.uncertainty_analysis import (noise_detection_auc, normalize_and_bucket,
                                                           predict_uncertainty, uncertainty_scores,
                                                           write_uncertainty_report)
from uncertainty_app.data.dataset import SPLITS
from uncertainty_app.data.dataset_io import load_dataset
from uncertainty_app.error_messages import CHECKPOINT_DIM_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.management.base import PipelineCommand
from uncertainty_app.models.checkpoint import SKETCH_KIND, load_checkpoint
from uncertainty_app.success_messages import UNCERTAINTY_WRITTEN_MESSAGE


# Scores the sketches of one split by predicted variance, then min-max normalizes
# them into low, mid and high buckets. Noisy flags give the detection AUC.
class Command(PipelineCommand):
    help = 'Score, normalize and bucket the predicted uncertainty of every sketch in a split.'

    def add_arguments(self, parser):
        parser.add_argument('--checkpoint', required=True, help='Sketch checkpoint.')
        parser.add_argument('--data', required=True, help='Dataset directory.')
        parser.add_argument('--out', required=True, help='Output report file.')
        parser.add_argument('--split', choices=SPLITS, default='train')

    def run_command(self, **options):
        checkpoint = load_checkpoint(options['checkpoint'], kind=SKETCH_KIND)
        self.announce(checkpoint.config)
        dataset = load_dataset(options['data'])
        model = checkpoint.model
        if model.input_dim != dataset.manifest.dim:
            raise ShapeMismatchError(CHECKPOINT_DIM_ERROR.format(expected=model.input_dim, got=dataset.manifest.dim))

        sketches = dataset.sketches(options['split'])
        sigma2 = predict_uncertainty(model, sketches.features)
        scores = uncertainty_scores(sigma2)
        records = normalize_and_bucket(scores, sketches.ids, sigma2)
        auc = None
        if sketches.noisy.any() and not sketches.noisy.all():
            auc = noise_detection_auc(scores, sketches.noisy)
            self.stdout.write(f'noisy-sample AUC: {auc:.4f}')
        summary = write_uncertainty_report(options['out'], records, auc)
        for bucket, (count, percent) in summary.items():
            self.stdout.write(f'{bucket}: {count} ({percent:.2f}%)')
        self.stdout.write(self.style.SUCCESS(UNCERTAINTY_WRITTEN_MESSAGE.format(path=options['out'])))
