"""The shipped .icat documents: valid structures and single-entry mutants."""

from pathlib import Path

HERE = Path(__file__).resolve().parent


def corpus_paths():
    return sorted(HERE.glob("*.icat"))


def mutant_paths():
    return sorted((HERE / "mutants").glob("*.icat"))


def load(path):
    from ..parser import parse_spec
    return parse_spec(Path(path).read_bytes())
