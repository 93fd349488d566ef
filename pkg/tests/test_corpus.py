"""The bundled corpus's stored verdicts must match the oracle, and every
certificate produced on it must stay sound."""

import json
from pathlib import Path

import pytest

from fqcover import certify, covers, load_system

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_entries():
    index = json.loads((CORPUS / "index.json").read_text())
    return [pytest.param(e["file"], e["covers"], id=e["file"]) for e in index]


@pytest.mark.parametrize("name,expected_covers", corpus_entries())
def test_stored_verdicts(name, expected_covers):
    system = load_system(CORPUS / name)
    report = covers(system)
    assert report.covers == expected_covers
    for mode in ("exact", "bounded"):
        cert = certify(system, mode=mode, auto_cutoff=1)
        if cert.certified:
            assert not expected_covers
        assert cert.oracle["agrees"] is True


def test_corpus_has_both_verdicts():
    index = json.loads((CORPUS / "index.json").read_text())
    verdicts = {e["covers"] for e in index}
    assert verdicts == {True, False}
    assert len(index) >= 12
