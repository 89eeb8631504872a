#!/usr/bin/env python3
"""Writes the smoke corpus, queries, qrels and word vectors under data/smoke.

Every query gets two focused documents (grade 2), two documents with one
matching paragraph (grade 1), one spam document that repeats a single query
term through a long passage (grade 0) and five off-topic distractors that
mention one query term once (grade 0). Output is fully determined by SEED.
"""

import argparse
import math
import random
from pathlib import Path

SEED = 20240611

QUERIES = {
    "q1": ("solar panel efficiency",
           "photovoltaic silicon sunlight inverter rooftop watt cells output module installer "
           "irradiance converter wafer grid battery"),
    "q2": ("glacier melt rate",
           "ice meltwater alpine retreat snowpack moraine crevasse runoff thaw icefield "
           "sediment summit calving fjord permafrost"),
    "q3": ("castle siege tactics",
           "fortress rampart catapult moat garrison battlements trebuchet knights archers "
           "drawbridge besiegers keep tower defenders ladders"),
    "q4": ("honeybee colony collapse",
           "hive beekeeper pollen queen workers apiary nectar varroa mites brood pesticide "
           "foraging honeycomb swarm wax"),
    "q5": ("marathon training injury",
           "runner mileage tendon stride knee shin recovery pace hamstring sprain footwear "
           "physiotherapy cadence taper fatigue"),
}

BACKGROUND = [
    "recipe oven garlic simmer flour butter onion kitchen spice roast dough skillet broth pepper basil",
    "budget invoice ledger interest mortgage savings portfolio dividend audit payroll pension tariff equity",
    "garden compost seedling pruning hedge tulip soil trowel greenhouse mulch orchard shrub lawn",
    "software compiler database server browser keyboard printer laptop network cache module kernel update",
    "passport airport luggage hotel itinerary museum ferry village harbor souvenir railway tourist map",
    "melody guitar orchestra rhythm concert piano violin chorus drummer album lyrics tempo stage",
]

GLUE = ["the", "of", "and", "a", "in", "to", "with", "for", "on", "is", "was", "by", "that"]


def sentence(rng, words, forced=()):
    body = [rng.choice(words) for _ in range(rng.randint(8, 13))]
    for w in forced:
        body.insert(rng.randrange(len(body) + 1), w)
    out = []
    for w in body:
        out.append(w)
        if rng.random() < 0.35:
            out.append(rng.choice(GLUE))
    text = " ".join(out).rstrip()
    return text[0].upper() + text[1:] + "."


def paragraph(rng, words, sentences=4, forced_per_sentence=()):
    return " ".join(sentence(rng, words, forced_per_sentence[i] if i < len(forced_per_sentence) else ())
                    for i in range(sentences))


def background_paragraph(rng):
    return paragraph(rng, rng.choice(BACKGROUND).split())


def focused_document(rng, qterms, topic):
    paras = [background_paragraph(rng) for _ in range(rng.randint(6, 8))]
    start = rng.randint(1, len(paras) - 3)
    for p in range(start, start + 3):
        forced = [qterms] * 2 + [qterms[:1], qterms[1:]]
        paras[p] = paragraph(rng, topic, 4, forced)
    return paras


def partial_document(rng, qterms, topic):
    paras = [background_paragraph(rng) for _ in range(rng.randint(6, 8))]
    p = rng.randrange(len(paras))
    paras[p] = paragraph(rng, topic, 4, [qterms, qterms[:1]])
    return paras


def spam_document(rng, qterms):
    word = qterms[0]
    paras = [background_paragraph(rng) for _ in range(rng.randint(3, 4))]
    filler = rng.choice(BACKGROUND).split()
    long_passage = " ".join(sentence(rng, filler, [word] * rng.randint(3, 4)) for _ in range(14))
    paras.insert(rng.randrange(len(paras) + 1), long_passage)
    return paras


def distractor_document(rng, qterms):
    paras = [background_paragraph(rng) for _ in range(rng.randint(5, 7))]
    p = rng.randrange(len(paras))
    paras[p] = paragraph(rng, rng.choice(BACKGROUND).split(), 4, [[rng.choice(qterms)]])
    return paras


def unit(vec):
    n = math.sqrt(sum(x * x for x in vec))
    return [x / n for x in vec]


def write_embeddings(path, rng, dim=8):
    groups = [(q[0] + " " + q[1]).split() for q in QUERIES.values()] + [b.split() for b in BACKGROUND]
    rows = []
    for words in groups:
        center = unit([rng.gauss(0, 1) for _ in range(dim)])
        for w in words:
            rows.append((w, [c + rng.gauss(0, 0.15) for c in center]))
    seen = set()
    unique = [(w, v) for w, v in rows if not (w in seen or seen.add(w))]
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(unique)} {dim}\n")
        for w, v in unique:
            f.write(w + " " + " ".join(f"{x:.5f}" for x in v) + "\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "smoke"))
    args = parser.parse_args()
    out = Path(args.out)
    docs_dir = out / "docs"
    docs_dir.mkdir(parents=True, exist_ok=True)
    for old in docs_dir.glob("*.txt"):
        old.unlink()

    rng = random.Random(SEED)
    qrels = []
    doc_no = 0

    def emit(paras):
        nonlocal doc_no
        doc_no += 1
        doc_id = f"d{doc_no:02d}"
        (docs_dir / f"{doc_id}.txt").write_text("\n\n".join(paras) + "\n", encoding="utf-8")
        return doc_id

    for qid, (text, topic_text) in QUERIES.items():
        qterms = text.split()
        topic = topic_text.split()
        for _ in range(2):
            qrels.append((qid, emit(focused_document(rng, qterms, topic)), 2))
        for _ in range(2):
            qrels.append((qid, emit(partial_document(rng, qterms, topic)), 1))
        qrels.append((qid, emit(spam_document(rng, qterms)), 0))
        for _ in range(5):
            qrels.append((qid, emit(distractor_document(rng, qterms)), 0))

    with open(out / "queries.tsv", "w", encoding="utf-8", newline="\n") as f:
        for qid, (text, _) in QUERIES.items():
            f.write(f"{qid}\t{text}\n")
    with open(out / "qrels.txt", "w", encoding="utf-8", newline="\n") as f:
        for qid, doc_id, grade in qrels:
            f.write(f"{qid} 0 {doc_id} {grade}\n")
    write_embeddings(out / "embeddings.txt", rng)


if __name__ == "__main__":
    main()
