from uncertainty_app.data.dataset import SHAPE, SKETCH, SPLITS
from uncertainty_app.data.dataset_io import load_dataset
from uncertainty_app.data.feature_csv import FeatureRow, write_feature_csv
from uncertainty_app.error_messages import CHECKPOINT_DIM_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.management.base import PipelineCommand
from uncertainty_app.models.checkpoint import SKETCH_KIND, load_checkpoint
from uncertainty_app.success_messages import EMBEDDINGS_WRITTEN_MESSAGE

ALL_SPLITS = 'all'


# Encodes sketches (mu only) or shapes with a saved checkpoint and writes the
# embeddings as a feature CSV that eval can read back.
class Command(PipelineCommand):
    help = 'Write retrieval embeddings (mu for sketches, f for shapes) of one dataset split as CSV.'

    def add_arguments(self, parser):
        parser.add_argument('--checkpoint', required=True, help='Sketch or shape checkpoint.')
        parser.add_argument('--data', required=True, help='Dataset directory.')
        parser.add_argument('--out', required=True, help='Output embedding CSV.')
        parser.add_argument('--split', choices=(*SPLITS, ALL_SPLITS), default='test')

    def run_command(self, **options):
        checkpoint = load_checkpoint(options['checkpoint'])
        self.announce(checkpoint.config)
        dataset = load_dataset(options['data'])
        model = checkpoint.model
        if model.input_dim != dataset.manifest.dim:
            raise ShapeMismatchError(CHECKPOINT_DIM_ERROR.format(expected=model.input_dim, got=dataset.manifest.dim))

        split = None if options['split'] == ALL_SPLITS else options['split']
        if checkpoint.kind == SKETCH_KIND:
            modality, samples = SKETCH, dataset.sketches(split)
            embeddings = model.embed(samples.features) if len(samples) else []
        else:
            modality, samples = SHAPE, dataset.shapes(split)
            embeddings = model.embed(samples.views) if len(samples) else []
        records = dataset.select(modality, split)
        rows = [FeatureRow(r.id, r.label, r.split, modality, vector) for r, vector in zip(records, embeddings)]
        write_feature_csv(options['out'], rows, model.embed_dim)
        self.stdout.write(self.style.SUCCESS(EMBEDDINGS_WRITTEN_MESSAGE.format(count=len(rows), path=options['out'])))
