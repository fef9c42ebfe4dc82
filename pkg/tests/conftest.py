import pytest

from citestack.corpus import PaperRecord, corpus_from_records
from citestack.pipeline import PipelineConfig, run_pipeline
from citestack.synthgen import SynthConfig, generate


def make_corpus(rows):
    """rows: (paper_id, journal_id, year, authors, references) tuples."""
    return corpus_from_records(
        PaperRecord(pid, jid, year, frozenset(authors), frozenset(refs))
        for pid, jid, year, authors, refs in rows
    )


@pytest.fixture(scope="session")
def golden_dataset():
    return generate(SynthConfig())


@pytest.fixture(scope="session")
def golden_result(golden_dataset):
    return run_pipeline(golden_dataset.tensor, golden_dataset.journal_sizes,
                        config=PipelineConfig())
