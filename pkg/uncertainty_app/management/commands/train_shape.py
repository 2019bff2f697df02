from pathlib import Path

from uncertainty_app.data.dataset import TRAIN
from uncertainty_app.data.dataset_io import load_dataset
from uncertainty_app.error_messages import MISSING_CENTERS_ERROR
from uncertainty_app.exceptions import DataFormatError
from uncertainty_app.management.base import PipelineCommand, add_training_arguments
from uncertainty_app.models.checkpoint import SKETCH_KIND, load_checkpoint, save_checkpoint
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.success_messages import SHAPE_MODEL_WRITTEN_MESSAGE
from uncertainty_app.training.report import write_train_report
from uncertainty_app.training.trainer import shape_accuracy, train_stage2

CHECKPOINT_FILE = 'shape.ckpt'
REPORT_FILE = 'shape_report.txt'


# Stage 2. The sketch checkpoint must carry its class centers; they stay frozen
# while the shape encoder is trained against them.
class Command(PipelineCommand):
    help = 'Stage 2: map shape embeddings onto the frozen sketch class centers.'

    def add_arguments(self, parser):
        parser.add_argument('--data', required=True, help='Dataset directory.')
        parser.add_argument('--checkpoint', required=True, help='Sketch checkpoint from train-sketch.')
        parser.add_argument('--out', required=True, help='Output directory for checkpoint and report.')
        add_training_arguments(parser)

    def run_command(self, **options):
        sketch = load_checkpoint(options['checkpoint'], kind=SKETCH_KIND)
        if sketch.classifier is None:
            raise DataFormatError(MISSING_CENTERS_ERROR.format(path=options['checkpoint']), path=options['checkpoint'])
        dataset = load_dataset(options['data'])
        cfg = self.resolve_config(options, base=sketch.config)
        shapes = dataset.shapes(TRAIN)
        encoder, report = train_stage2(shapes, sketch.classifier, cfg, Rng(cfg.seed))

        out = Path(options['out'])
        out.mkdir(parents=True, exist_ok=True)
        save_checkpoint(out / CHECKPOINT_FILE, encoder, cfg)
        write_train_report(out / REPORT_FILE, report)
        accuracy = shape_accuracy(encoder, sketch.classifier, shapes.views, shapes.labels)
        self.stdout.write(f'train accuracy: {accuracy:.4f}')
        self.stdout.write(self.style.SUCCESS(SHAPE_MODEL_WRITTEN_MESSAGE.format(path=out / CHECKPOINT_FILE)))
