from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class TrainReport:
    stage: str
    seed: int
    losses: list = field(default_factory=list)
    lrs: list = field(default_factory=list)
    wall_time: float = field(default=0.0, compare=False)
    parameters: list = field(default_factory=list, compare=False, repr=False)
    classifier: object = field(default=None, compare=False, repr=False)


def format_train_report(report):
    lines = [f'# {report.stage} seed={report.seed}']
    lines += [f'{epoch} {loss!r} {lr!r}' for epoch, (loss, lr) in enumerate(zip(report.losses, report.lrs))]
    return '\n'.join(lines) + '\n'


def write_train_report(path, report):
    # Wall time is logged, not written, so reruns produce identical files.
    Path(path).write_text(format_train_report(report), encoding='utf-8')
