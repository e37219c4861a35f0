"""Dense lexical EM reference. Each target sentence gets one extra null token;
every target token is generated by a uniformly chosen source word."""
import json
import math
import random
from pathlib import Path

NULL = "<null>"


def train(pairs, iterations):
    src = [s.split() for s, _ in pairs]
    tgt = [t.split() + [NULL] for _, t in pairs]
    fv = sorted({f for s in src for f in s})
    ev = sorted({e for t in tgt for e in t})
    t = {f: {e: 1.0 / len(ev) for e in ev} for f in fv}

    def loglik():
        return sum(math.log(sum(t[f][e] for f in s) / len(s)) for s, ts in zip(src, tgt) for e in ts)

    history = []
    for _ in range(iterations):
        history.append(loglik())
        counts = {f: {e: 0.0 for e in ev} for f in fv}
        for s, ts in zip(src, tgt):
            for e in ts:
                z = sum(t[f][e] for f in s)
                for f in s:
                    counts[f][e] += t[f][e] / z
        t = {f: {e: c / sum(row.values()) for e, c in row.items()} for f, row in counts.items()}
    history.append(loglik())
    return t, history


def argmax(row):
    return min(row.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def main():
    out_dir = Path(__file__).resolve().parent.parent / "data" / "oracles"
    toy = [("das Haus", "the house"), ("das Buch", "the book"), ("ein Buch", "a book")]
    t, hist = train(toy, 10)
    result = {"toy": {"pairs": toy, "iterations": 10, "history": hist,
                      "t": {f: {e: p for e, p in row.items() if p > 0} for f, row in t.items()},
                      "argmax": {f: argmax(row) for f, row in t.items()}}}

    rng = random.Random(99)
    src_vocab = ["Hund", "Katze", "sieht", "den", "die", "Maus", "jagt", "klein", "groß", "Vogel"]
    lex = {"Hund": "dog", "Katze": "cat", "sieht": "sees", "den": "the", "die": "the", "Maus": "mouse",
           "jagt": "chases", "klein": "small", "groß": "big", "Vogel": "bird"}
    rand_pairs = []
    for _ in range(30):
        s = [rng.choice(src_vocab) for _ in range(rng.randint(2, 6))]
        tw = [lex[w] for w in s]
        if rng.random() < 0.3:
            tw.insert(rng.randrange(len(tw) + 1), "indeed")
        rand_pairs.append((" ".join(s), " ".join(tw)))
    t, hist = train(rand_pairs, 6)
    result["random"] = {"pairs": rand_pairs, "iterations": 6, "history": hist,
                        "t": {f: {e: p for e, p in row.items() if p > 0} for f, row in t.items()}}

    words = [f"w{i}" for i in range(40)]
    copy = []
    for _ in range(50):
        line = " ".join(rng.sample(words, rng.randint(3, 8)))
        copy.append((line, line))
    t, hist = train(copy, 10)
    result["copy"] = {"pairs": copy, "iterations": 10,
                      "argmax_is_identity": all(argmax(row) == f for f, row in t.items())}
    (out_dir / "em.json").write_text(json.dumps(result, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
