from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from uncertainty_app.data.key_value_io import read_key_values
from uncertainty_app.exceptions import UncertaintyError
from uncertainty_app.models.train_config_model import TrainConfig
from uncertainty_app.serializers.train_config_serializer import load_train_config

RUNTIME_ERROR_CODE = 2


def add_seed_argument(parser):
    parser.add_argument('--seed', type=int, help='Random seed (default: UNCERTAINTY_SEED setting).')


def add_training_arguments(parser):
    parser.add_argument('--config', help='key=value file with TrainConfig fields.')
    add_seed_argument(parser)
    parser.add_argument('--epochs', type=int, help='Override max_epochs.')


def validation_text(exc):
    detail = exc.detail
    if isinstance(detail, dict):
        return '; '.join(f'{key}: {" ".join(str(m) for m in messages)}' for key, messages in detail.items())
    if isinstance(detail, list):
        return ' '.join(str(m) for m in detail)
    return str(detail)


class PipelineCommand(BaseCommand):
    """Base of every pipeline command.

    Subclasses implement ``run_command``. Data, validation and IO failures are
    reported as ``CommandError`` with return code 2; argument errors keep
    Django's default code 1.
    """

    def handle(self, *args, **options):
        try:
            self.run_command(**options)
        except ValidationError as exc:
            raise CommandError(validation_text(exc), returncode=RUNTIME_ERROR_CODE) from exc
        except (UncertaintyError, ValueError, OSError) as exc:
            raise CommandError(str(exc), returncode=RUNTIME_ERROR_CODE) from exc

    def run_command(self, **options):
        raise NotImplementedError

    def resolve_seed(self, options):
        seed = options.get('seed')
        return settings.UNCERTAINTY['DEFAULT_SEED'] if seed is None else seed

    def resolve_config(self, options, base=None):
        """Config file over ``base`` (defaults), then --seed/--epochs/--lambda on top."""
        cfg = base or TrainConfig(seed=self.resolve_seed({}))
        if options.get('config'):
            cfg = load_train_config(read_key_values(options['config']), base=cfg)
        cfg = cfg.with_overrides(max_epochs=options.get('epochs'), lam=options.get('lam'), seed=options.get('seed'))
        self.announce(cfg)
        return cfg

    def announce(self, cfg):
        self.stdout.write(f'config: {cfg}')
        self.stdout.write(f'seed: {cfg.seed}')
