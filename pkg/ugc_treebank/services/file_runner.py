"""Input discovery and the per-file worker pool."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

CONLLU_SUFFIX = ".conllu"

T = TypeVar("T")


@dataclass(frozen=True)
class InputFile:
    """A file to process and its path relative to the argument it came from."""
    path: Path
    relative: Path


def collect_files(paths: Iterable[Path]) -> list[InputFile]:
    """
    Expand arguments into files: directories are searched recursively for
    ``*.conllu`` in lexicographic order, plain files are taken as given.

    Raises:
        FileNotFoundError: an argument does not exist
    """
    found: list[InputFile] = []
    seen: set[Path] = set()
    for arg in paths:
        arg = Path(arg)
        if arg.is_dir():
            candidates = sorted(
                (p for p in arg.rglob(f"*{CONLLU_SUFFIX}") if p.is_file()),
                key=lambda p: p.relative_to(arg).as_posix(),
            )
            items = [InputFile(p, p.relative_to(arg)) for p in candidates]
        elif arg.is_file():
            items = [InputFile(arg, Path(arg.name))]
        else:
            raise FileNotFoundError(f"no such file or directory: {arg}")
        for item in items:
            key = item.path.resolve()
            if key not in seen:
                seen.add(key)
                found.append(item)
    logger.debug("collect_files files=%d", len(found))
    return found


def run_files(files: list[InputFile], worker: Callable[[InputFile], T], jobs: int = 1) -> list[T]:
    """
    Apply ``worker`` to every file; results come back in input order whatever ``jobs`` is.

    With ``jobs`` > 1 the files go to a process pool, so ``worker`` and its
    bound arguments must pickle (module-level functions, ``functools.partial``).
    """
    if jobs <= 1 or len(files) <= 1:
        return [worker(f) for f in files]
    workers = min(jobs, len(files))
    logger.debug("run_files files=%d workers=%d", len(files), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, files))
