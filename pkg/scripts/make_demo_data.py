#!/usr/bin/env python3
"""Generate a synthetic demo corpus with a planted citation-similarity signal.

Writes `<out>/corpus/*.txt`, `<out>/citations.csv`, and `<out>/pairs.csv` in the
formats the `lexsim` CLI consumes. Documents fall into two topical vocabularies
and cite from a shared pool of precedent ids; expert scores on the sampled
pairs are a noisy affine image of out-citation overlap, so the network measures
should correlate strongly with them while an unrelated baseline would not.
"""

import argparse
import csv
from pathlib import Path

import numpy as np

CUES = [
    "It was held that the levy was valid.",
    "Learned counsel contended that the order was without jurisdiction.",
    "The High Court dismissed the petition.",
    "Under section 5 of the Act the provision applies.",
    "The decision in Smith v. Jones was relied upon.",
    "We dismiss the appeal.",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", required=True, help="output directory")
    ap.add_argument("--docs", type=int, default=60, help="number of judgment documents")
    ap.add_argument("--precedents", type=int, default=40,
                    help="size of the cited-precedent pool")
    ap.add_argument("--pairs", type=int, default=80, help="number of expert-scored pairs")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    out = Path(args.out)
    corpus_dir = out / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)

    vocab = {0: [f"alpha{i}" for i in range(40)], 1: [f"beta{i}" for i in range(40)]}
    ids = [f"case{i:03d}" for i in range(args.docs)]
    pool = [f"precedent{i:02d}" for i in range(args.precedents)]

    out_sets = {}
    edges = []
    for i, doc_id in enumerate(ids):
        paragraphs = [" ".join(rng.choice(vocab[i % 2], 25)) for _ in range(3)]
        paragraphs.append(str(rng.choice(CUES)))
        (corpus_dir / f"{doc_id}.txt").write_text("\n\n".join(paragraphs), encoding="utf-8")
        cited = sorted(rng.choice(pool, 6, replace=False))
        out_sets[doc_id] = set(cited)
        edges.extend((doc_id, c) for c in cited)
        # also cite earlier cases from the same block of ten, so same-block
        # pairs share in-citers and co-citation / dispersion have variance
        block_start = (i // 10) * 10
        earlier = ids[block_start:i]
        if earlier:
            picks = rng.choice(len(earlier), min(3, len(earlier)), replace=False)
            edges.extend((doc_id, earlier[int(j)]) for j in picks)

    with open(out / "citations.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst"])
        writer.writerows(edges)

    rows, seen = [], set()
    while len(rows) < args.pairs:
        i, j = (int(x) for x in rng.integers(0, args.docs, 2))
        if len(rows) % 2 == 0:  # half the pairs come from the same block of ten
            j = (i // 10) * 10 + j % 10
        a, b = ids[i], ids[j]
        if a == b or frozenset((a, b)) in seen:
            continue
        seen.add(frozenset((a, b)))
        overlap = len(out_sets[a] & out_sets[b]) / len(out_sets[a] | out_sets[b])
        expert = float(np.clip(10 * overlap + rng.normal(0, 0.3), 0, 10))
        rows.append([a, b, f"{expert:.2f}"])
    with open(out / "pairs.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_a", "doc_b", "score"])
        writer.writerows(rows)

    print(f"wrote {args.docs} documents, {len(edges)} citations, "
          f"{len(rows)} scored pairs under {out}")


if __name__ == "__main__":
    main()
