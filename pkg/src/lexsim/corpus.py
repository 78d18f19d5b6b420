"""Corpus loading and tokenization for collections of court judgments.

A corpus is a directory of ``<DocumentId>.txt`` files plus a ``src,dst``
CSV edge list of citations between documents. Everything is immutable
after loading and safe for concurrent reads.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(ValueError):
    """Malformed corpus input: bad id, bad file, bad citation row."""


_DOC_ID_FORBIDDEN = re.compile(r"[\s/\\]")
_PARAGRAPH_SEP = re.compile(r"\n\s*\n")
_NON_ALNUM = re.compile(r"[^0-9a-z]+")


def validate_document_id(doc_id: str) -> str:
    if not doc_id:
        raise CorpusError("document id must be non-empty")
    if _DOC_ID_FORBIDDEN.search(doc_id):
        raise CorpusError(f"document id {doc_id!r} contains whitespace or a path separator")
    return doc_id


def split_paragraphs(text: str) -> list[str]:
    """Split on runs of blank lines, trim each block, drop empty blocks."""
    blocks = _PARAGRAPH_SEP.split(text)
    return [b.strip() for b in blocks if b.strip()]


def tokenize(text: str, stopwords: set[str] | None = None) -> list[str]:
    """Lowercase and split on any non-alphanumeric character."""
    tokens = [t for t in _NON_ALNUM.split(text.lower()) if t]
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return tokens


def load_stopwords(path: str | Path) -> set[str]:
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip().lower()
            if word:
                words.add(word)
    return words


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    paragraphs: tuple[str, ...]

    @classmethod
    def from_text(cls, doc_id: str, text: str) -> "Document":
        validate_document_id(doc_id)
        return cls(doc_id, text, tuple(split_paragraphs(text)))


@dataclass(frozen=True)
class Corpus:
    documents: dict[str, Document]
    citation_edges: tuple[tuple[str, str], ...]
    external_ids: frozenset[str] = field(default_factory=frozenset)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.documents

    def __len__(self) -> int:
        return len(self.documents)


@dataclass(frozen=True)
class SimilarityScore:
    """A pairwise similarity value tagged with the method that produced it."""

    method: str
    pair: tuple[str, str]
    value: float


def load_corpus(root: str | Path, citations: str | Path, strict: bool = False) -> Corpus:
    """Load all ``*.txt`` documents under ``root`` and the citation edge list.

    In strict mode every edge endpoint must be a loaded document; otherwise
    unknown endpoints are recorded in ``Corpus.external_ids``. Self-loop
    edges are always rejected.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus directory not found: {root}")

    documents: dict[str, Document] = {}
    for path in sorted(root.glob("*.txt")):
        doc_id = validate_document_id(path.stem)
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"{path}: not valid UTF-8 ({exc})") from exc
        if doc_id in documents:
            raise CorpusError(f"duplicate document id {doc_id!r}")
        documents[doc_id] = Document.from_text(doc_id, text)

    edges: list[tuple[str, str]] = []
    external: set[str] = set()
    citations = Path(citations)
    if not citations.is_file():
        raise CorpusError(f"citations file not found: {citations}")
    with open(citations, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["src", "dst"]:
            raise CorpusError(f"{citations}: expected header 'src,dst', got {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise CorpusError(f"{citations}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                src = validate_document_id(row[0].strip())
                dst = validate_document_id(row[1].strip())
            except CorpusError as exc:
                raise CorpusError(f"{citations}:{lineno}: {exc}") from exc
            if src == dst:
                raise CorpusError(f"{citations}:{lineno}: self-loop edge {src!r}")
            for endpoint in (src, dst):
                if endpoint not in documents:
                    if strict:
                        raise CorpusError(
                            f"{citations}:{lineno}: unknown document {endpoint!r} (strict mode)"
                        )
                    external.add(endpoint)
            edges.append((src, dst))

    return Corpus(documents, tuple(edges), frozenset(external))
