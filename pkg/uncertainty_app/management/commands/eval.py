from pathlib import Path

from uncertainty_app.data.feature_csv import read_feature_csv, read_feature_header
from uncertainty_app.error_messages import EMPTY_GALLERY_ERROR, QUERY_DIM_ERROR
from uncertainty_app.exceptions import ShapeMismatchError
from uncertainty_app.management.base import PipelineCommand
from uncertainty_app.retrieval.evaluation import evaluate, write_metric_report
from uncertainty_app.success_messages import METRICS_WRITTEN_MESSAGE


# Ranks the gallery CSV for every query CSV row and writes the metric report.
class Command(PipelineCommand):
    help = 'Score query embeddings against a gallery: NN, FT, ST, E, DCG, mAP and the PR curve.'

    def add_arguments(self, parser):
        parser.add_argument('--queries', required=True, help='Query embedding CSV.')
        parser.add_argument('--gallery', required=True, help='Gallery embedding CSV.')
        parser.add_argument('--out', required=True, help='Output directory.')

    def run_command(self, **options):
        query_dim, _ = read_feature_header(options['queries'])
        gallery_dim, _ = read_feature_header(options['gallery'])
        if query_dim != gallery_dim:
            raise ShapeMismatchError(QUERY_DIM_ERROR.format(queries=query_dim, gallery=gallery_dim))
        self.stdout.write(f'config: queries={options["queries"]} gallery={options["gallery"]} dim={query_dim}')
        self.stdout.write('seed: none')

        queries = read_feature_csv(options['queries'])
        gallery = read_feature_csv(options['gallery'])
        if not gallery.rows:
            raise ValueError(EMPTY_GALLERY_ERROR)
        report = evaluate(queries.matrix(), gallery.matrix(), queries.labels(), gallery.labels(),
                          [row.id for row in queries.rows], [row.id for row in gallery.rows])
        path = write_metric_report(options['out'], report)
        for name, value in report.summary().items():
            self.stdout.write(f'{name}: {value:.4f}')
        if report.excluded:
            self.stdout.write(f'excluded queries: {len(report.excluded)}')
        self.stdout.write(self.style.SUCCESS(METRICS_WRITTEN_MESSAGE.format(path=Path(path).parent)))
