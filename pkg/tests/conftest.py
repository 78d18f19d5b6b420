import csv

import pytest

from lexsim.corpus import load_corpus
from lexsim.graph import build_graph

# toy 6-node precedent network: A and B share out-citations {C,D} and in-citation {C}
TOY_EDGES = [
    ("A", "C"), ("A", "D"), ("A", "E"),
    ("B", "C"), ("B", "D"), ("B", "F"),
    ("C", "A"), ("D", "A"),
    ("C", "B"), ("F", "B"),
]

TOY_TEXTS = {
    "A": "The appellant was convicted under section 302.\n\n"
         "The High Court dismissed the revision petition.\n\n"
         "We are of the opinion that the conviction must stand. We dismiss the appeal.",
    "B": "The appellant was convicted under section 302 read with section 34.\n\n"
         "Learned counsel contended that the evidence was circumstantial.\n\n"
         "We allow the appeal and set aside the conviction.",
    "C": "The respondent was assessed to tax for the year 1950.\n\n"
         "The decision in Smith v. Jones was relied on by the appellant.",
    "D": "An agreement was executed between the parties in 1948.\n\n"
         "It was held in the decision of this Court that the agreement was void.",
    "E": "Brief facts: the land was acquired under the Act.\n\n"
         "The tribunal held that compensation was payable.",
    "F": "The question is whether the levy was constitutional.\n\n"
         "Order accordingly. No order as to costs.",
}


def write_toy_corpus(tmp_path, texts=None, edges=None):
    """Materialize the toy corpus on disk; returns (root, citations path)."""
    root = tmp_path / "corpus"
    root.mkdir(exist_ok=True)
    for doc_id, text in (texts or TOY_TEXTS).items():
        (root / f"{doc_id}.txt").write_text(text, encoding="utf-8")
    citations = tmp_path / "citations.csv"
    with open(citations, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst"])
        writer.writerows(edges if edges is not None else TOY_EDGES)
    return root, citations


@pytest.fixture
def toy_paths(tmp_path):
    return write_toy_corpus(tmp_path)


@pytest.fixture
def toy_corpus(toy_paths):
    root, citations = toy_paths
    return load_corpus(root, citations, strict=True)


@pytest.fixture
def toy_graph(toy_corpus):
    return build_graph(toy_corpus)
