from django.conf import settings
from django.core.management.base import CommandError

from uncertainty_app.error_messages import GRADCHECK_FAILED_ERROR
from uncertainty_app.losses.kl_loss import kl_gaussian
from uncertainty_app.losses.margin_loss import SHAPE_MARGIN, SKETCH_MARGIN, lmcl, transfer_loss
from uncertainty_app.management.base import RUNTIME_ERROR_CODE, PipelineCommand, add_seed_argument
from uncertainty_app.models.classifier_model import Classifier
from uncertainty_app.models.model_factory import init_params
from uncertainty_app.models.train_config_model import TrainConfig
from uncertainty_app.numeric.grad_check import grad_check
from uncertainty_app.numeric.rng import Rng
from uncertainty_app.success_messages import GRADCHECK_PASSED_MESSAGE
from uncertainty_app.training.trainer import shape_objective, sketch_objective

BATCH = 6
EMBED_DIM = 8
INPUT_DIM = 5
CLASSES = 4
VIEWS = 3


def gradient_checks(rng, step, floor=1e-12):
    """Relative errors of every loss on a small random instance drawn from ``rng``."""
    cfg = TrainConfig(embed_dim=EMBED_DIM, hidden_dims=(7,), batch_size=BATCH, views=VIEWS)
    Z = rng.normal((BATCH, EMBED_DIM))
    mu = rng.normal((BATCH, EMBED_DIM))
    logvar = 0.5 * rng.normal((BATCH, EMBED_DIM))
    weight = rng.normal((CLASSES, EMBED_DIM))
    labels = rng.integers(0, CLASSES, BATCH)
    frozen = Classifier(weight.copy(), frozen=True)

    def lmcl_objective(params):
        result = lmcl(params[0], Classifier(params[1]), labels, SKETCH_MARGIN)
        return result.loss, [result.grads['Z'], result.grads['W']]

    def kl_objective(params):
        result = kl_gaussian(params[0], params[1])
        return result.loss, [result.grads['mu'], result.grads['logvar']]

    def transfer_objective(params):
        result = transfer_loss(params[0], frozen, labels, SHAPE_MARGIN)
        return result.loss, [result.grads['F']]

    model_params = init_params(cfg, rng, INPUT_DIM, CLASSES)
    x = rng.normal((BATCH, INPUT_DIM))
    eps = rng.normal((BATCH, EMBED_DIM))
    views = rng.normal((BATCH, VIEWS, INPUT_DIM))
    sketch = model_params.sketch
    split = len(sketch.parameters())

    def uncertainty_objective(params):
        sketch.set_parameters(params[:split])
        return sketch_objective(sketch, Classifier(params[split]), x, labels, eps, SKETCH_MARGIN, cfg.lam)

    shape = model_params.shape
    shape_classifier = model_params.classifier.freeze()

    def shape_transfer_objective(params):
        shape.set_parameters(params)
        return shape_objective(shape, shape_classifier, views, labels, SHAPE_MARGIN)

    return {
        'lmcl': grad_check(lmcl_objective, [Z, weight], step, floor),
        'kl': grad_check(kl_objective, [mu, logvar], step, floor),
        'uncertainty': grad_check(uncertainty_objective, [*sketch.parameters(), model_params.classifier.weight], step, floor),
        'transfer': grad_check(transfer_objective, [Z], step, floor),
        'shape transfer': grad_check(shape_transfer_objective, shape.parameters(), step, floor),
    }


# Compares every analytic gradient with central differences on a tiny model.
# Exits non-zero when any relative error reaches the tolerance.
class Command(PipelineCommand):
    help = 'Compare analytic gradients of every loss with central finite differences.'

    def add_arguments(self, parser):
        add_seed_argument(parser)

    def run_command(self, **options):
        seed = self.resolve_seed(options)
        step = settings.UNCERTAINTY['GRADCHECK_STEP']
        tolerance = settings.UNCERTAINTY['GRADCHECK_TOLERANCE']
        self.stdout.write(f'config: step={step!r} tolerance={tolerance!r}')
        self.stdout.write(f'seed: {seed}')

        errors = gradient_checks(Rng(seed), step, settings.UNCERTAINTY['GRADCHECK_FLOOR'])
        for name, error in errors.items():
            self.stdout.write(f'{name}: {error:.3e}')
        for name, error in errors.items():
            if not error < tolerance:
                raise CommandError(GRADCHECK_FAILED_ERROR.format(name=name, error=error, tolerance=tolerance),
                                   returncode=RUNTIME_ERROR_CODE)
        self.stdout.write(self.style.SUCCESS(GRADCHECK_PASSED_MESSAGE.format(error=max(errors.values()))))
