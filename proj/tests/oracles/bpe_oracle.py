"""Brute-force BPE reference: recounts every pair from scratch each step."""
import json
import random
from collections import Counter
from pathlib import Path

EOW = "</w>"


def initial(word):
    chars = list(word)
    chars[-1] += EOW
    return tuple(chars)


def vocab_size(segs, counts):
    return len({s for w, seg in segs.items() if counts[w] > 0 for s in seg})


def merge_word(seg, left, right):
    out, i = [], 0
    while i < len(seg):
        if i + 1 < len(seg) and seg[i] == left and seg[i + 1] == right:
            out.append(left + right)
            i += 2
        else:
            out.append(seg[i])
            i += 1
    return tuple(out)


def train(counts, target):
    segs = {w: initial(w) for w in counts}
    merges = []
    while vocab_size(segs, counts) < target:
        pairs = Counter()
        for w, seg in segs.items():
            for a, b in zip(seg, seg[1:]):
                pairs[(a, b)] += counts[w]
        if not pairs:
            break
        (left, right), best = min(pairs.items(), key=lambda kv: (-kv[1], kv[0]))
        if best < 2:
            break
        merges.append([left, right, best])
        segs = {w: merge_word(seg, left, right) for w, seg in segs.items()}
    vocab = Counter()
    for w, seg in segs.items():
        for s in seg:
            vocab[s] += counts[w]
    return merges, dict(sorted(vocab.items()))


def random_counts(rng, n_words, alphabet):
    counts = {}
    for _ in range(n_words):
        w = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 9)))
        counts[w] = counts.get(w, 0) + rng.randint(1, 7)
    return counts


def main():
    rng = random.Random(20240611)
    cases = []
    classic = {"low": 5, "lower": 2, "newest": 6, "widest": 3}
    for target in (100, 14):
        merges, vocab = train(classic, target)
        cases.append({"name": f"classic-{target}", "counts": classic, "target": target, "merges": merges, "vocab": vocab})
    merges, vocab = train({"aaaa": 1}, 100)
    cases.append({"name": "aaaa", "counts": {"aaaa": 1}, "target": 100, "merges": merges, "vocab": vocab})
    for i, (alphabet, target) in enumerate([("abcde", 40), ("abcdefghij", 80), ("aäbßcé", 1000), ("xyz", 25)]):
        counts = random_counts(rng, 150, alphabet)
        merges, vocab = train(counts, target)
        cases.append({"name": f"random-{i}", "counts": counts, "target": target, "merges": merges, "vocab": vocab})
    out = Path(__file__).resolve().parent.parent / "data" / "oracles" / "bpe.json"
    out.write_text(json.dumps(cases, ensure_ascii=False, indent=1, sort_keys=True) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
