from pathlib import Path

from uncertainty_app.data.dataset import TRAIN
from uncertainty_app.data.dataset_io import load_dataset
from uncertainty_app.management.base import PipelineCommand, add_training_arguments
from uncertainty_app.models.checkpoint import save_checkpoint
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.success_messages import SKETCH_MODEL_WRITTEN_MESSAGE
from uncertainty_app.training.report import write_train_report
from uncertainty_app.training.trainer import sketch_accuracy, train_stage1

CHECKPOINT_FILE = 'sketch.ckpt'
REPORT_FILE = 'sketch_report.txt'


# Stage 1. Trains the sketch encoder with the uncertainty loss and saves it
# together with the learned class centers.
class Command(PipelineCommand):
    help = 'Stage 1: learn probabilistic sketch embeddings and the class centers.'

    def add_arguments(self, parser):
        parser.add_argument('--data', required=True, help='Dataset directory.')
        parser.add_argument('--out', required=True, help='Output directory for checkpoint and report.')
        add_training_arguments(parser)
        parser.add_argument('--lambda', dest='lam', type=float, help='Override the KL weight.')

    def run_command(self, **options):
        dataset = load_dataset(options['data'])
        cfg = self.resolve_config(options)
        sketches = dataset.sketches(TRAIN)
        model, classifier, report = train_stage1(sketches, cfg, Rng(cfg.seed), classes=dataset.manifest.classes)

        out = Path(options['out'])
        out.mkdir(parents=True, exist_ok=True)
        save_checkpoint(out / CHECKPOINT_FILE, model, cfg, classifier)
        write_train_report(out / REPORT_FILE, report)
        accuracy = sketch_accuracy(model, classifier, sketches.features, sketches.labels)
        self.stdout.write(f'train accuracy: {accuracy:.4f}')
        self.stdout.write(self.style.SUCCESS(SKETCH_MODEL_WRITTEN_MESSAGE.format(path=out / CHECKPOINT_FILE)))
