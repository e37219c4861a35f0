"""Writes the bundled natural de-en fixture under data/fixtures/natural/.

Sentences are word-aligned and monotone so the lexicon baseline can learn
them. Natural train/valid never use the mock backend's nouns; the test split
does, so only synthetic data covers part of the test vocabulary.
"""
import random
import re
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]

NOUNS = [
    ("der", "Mann", "man"), ("die", "Frau", "woman"), ("das", "Mädchen", "girl"), ("der", "Junge", "boy"),
    ("der", "Nachbar", "neighbour"), ("die", "Nachbarin", "neighbor"), ("der", "Bauer", "farmer"),
    ("die", "Ärztin", "physician"), ("der", "Koch", "cook"), ("die", "Köchin", "chef"),
    ("der", "Fahrer", "driver"), ("die", "Sängerin", "singer"), ("der", "Maler", "painter"),
    ("der", "Dichter", "poet"), ("die", "Richterin", "judge"), ("der", "Soldat", "soldier"),
    ("der", "König", "king"), ("die", "Königin", "queen"), ("der", "Priester", "priest"),
    ("der", "Student", "student"), ("die", "Studentin", "scholar"), ("der", "Gast", "guest"),
    ("der", "Händler", "merchant"), ("der", "Fischer", "fisherman"), ("der", "Jäger", "hunter"),
    ("die", "Großmutter", "grandmother"), ("der", "Großvater", "grandfather"), ("der", "Onkel", "uncle"),
    ("die", "Tante", "aunt"), ("der", "Bruder", "brother"), ("die", "Schwester", "sister"),
    ("der", "Sohn", "son"), ("die", "Tochter", "daughter"), ("der", "Chef", "boss"),
    ("die", "Kollegin", "colleague"), ("der", "Kunde", "customer"), ("die", "Polizistin", "officer"),
    ("der", "Pilot", "pilot"), ("der", "Matrose", "sailor"), ("der", "Gärtner", "gardener"),
    ("der", "Schreiner", "carpenter"), ("die", "Tänzerin", "dancer"), ("der", "Wächter", "guard"),
    ("der", "Bote", "messenger"), ("die", "Hexe", "witch"), ("der", "Riese", "giant"),
    ("der", "Zwerg", "dwarf"), ("der", "Ritter", "knight"), ("die", "Prinzessin", "princess"),
    ("der", "Esel", "donkey"), ("die", "Ziege", "goat"), ("das", "Schaf", "sheep"),
    ("die", "Kuh", "cow"), ("das", "Schwein", "pig"), ("der", "Hahn", "rooster"),
    ("die", "Ente", "duck"), ("die", "Gans", "goose"), ("der", "Affe", "monkey"),
    ("der", "Löwe", "lion"), ("der", "Tiger", "tiger"), ("die", "Schlange", "snake"),
    ("die", "Biene", "bee"), ("die", "Spinne", "spider"), ("der", "Adler", "eagle"),
    ("der", "Rabe", "raven"), ("die", "Taube", "dove"), ("der", "Hirsch", "deer"),
    ("das", "Kamel", "camel"), ("der", "Elefant", "elephant"), ("die", "Ratte", "rat"),
    ("der", "Stift", "pen"), ("das", "Heft", "notebook"), ("die", "Kiste", "box"),
    ("der", "Korb", "basket"), ("der", "Teller", "plate"), ("die", "Gabel", "fork"),
    ("das", "Messer", "knife"), ("der", "Löffel", "spoon"), ("die", "Flasche", "bottle"),
    ("das", "Glas", "glass"), ("der", "Eimer", "bucket"), ("die", "Leiter", "ladder"),
    ("der", "Hammer", "hammer"), ("die", "Säge", "saw"), ("das", "Seil", "rope"),
    ("der", "Teppich", "carpet"), ("das", "Kissen", "pillow"), ("die", "Decke", "blanket"),
    ("der", "Spiegel", "mirror"), ("der", "Ofen", "oven"), ("der", "Topf", "pot"),
    ("die", "Pfanne", "pan"), ("der", "Koffer", "suitcase"), ("der", "Mantel", "coat"),
    ("die", "Jacke", "jacket"), ("der", "Ring", "ring"), ("die", "Krone", "crown"),
    ("das", "Schwert", "sword"), ("der", "Schild", "shield"), ("das", "Rad", "wheel"),
    ("der", "Wagen", "wagon"), ("das", "Boot", "boat"), ("der", "Turm", "tower"),
    ("die", "Mauer", "wall"), ("das", "Tor", "gate"), ("der", "Markt", "market"),
    ("die", "Kirche", "church"), ("das", "Schloss", "castle"), ("die", "Mühle", "mill"),
    ("der", "Hafen", "harbour"), ("der", "Bahnhof", "station"), ("die", "Wiese", "meadow"),
    ("das", "Feld", "field"), ("der", "Hügel", "hill"), ("das", "Tal", "valley"),
    ("die", "Höhle", "cave"), ("der", "Stein", "stone"), ("der", "Sand", "sand"),
    ("das", "Feuer", "fire"), ("der", "Rauch", "smoke"), ("das", "Eis", "ice"),
    ("der", "Nebel", "fog"), ("der", "Sturm", "storm"), ("das", "Gewitter", "thunderstorm"),
    ("die", "Rose", "rose"), ("die", "Tulpe", "tulip"), ("das", "Gras", "grass"),
    ("die", "Eiche", "oak"), ("die", "Birke", "birch"), ("die", "Kartoffel", "potato"),
    ("die", "Zwiebel", "onion"), ("die", "Karotte", "carrot"), ("die", "Birne", "pear"),
    ("die", "Kirsche", "cherry"), ("die", "Traube", "grape"), ("der", "Honig", "honey"),
    ("die", "Butter", "butter"), ("das", "Ei", "egg"), ("der", "Reis", "rice"),
    ("das", "Salz", "salt"), ("der", "Zucker", "sugar"), ("der", "Wein", "wine"),
]

ADJECTIVES = [
    ("alte", "old"), ("junge", "young"), ("kleine", "little"), ("große", "tall"), ("neue", "new"),
    ("schöne", "beautiful"), ("hässliche", "ugly"), ("dunkle", "dark"), ("helle", "bright"),
    ("laute", "loud"), ("leise", "quiet"), ("schnelle", "fast"), ("langsame", "slow"),
    ("müde", "tired"), ("wache", "awake"), ("fröhliche", "cheerful"), ("traurige", "sad"),
    ("kluge", "clever"), ("dumme", "foolish"), ("mutige", "brave"), ("ängstliche", "fearful"),
    ("freundliche", "kind"), ("böse", "wicked"), ("reiche", "rich"), ("arme", "poor"),
    ("starke", "strong"), ("schwache", "weak"), ("hungrige", "hungry"), ("durstige", "thirsty"),
    ("kranke", "sick"), ("gesunde", "healthy"), ("stolze", "proud"), ("stille", "silent"),
    ("wilde", "wild"), ("zahme", "tame"), ("rote", "red"), ("blaue", "blue"), ("grüne", "green"),
    ("gelbe", "yellow"), ("schwarze", "black"), ("weiße", "white"), ("graue", "grey"),
    ("warme", "warm"), ("kalte", "cold"), ("nasse", "wet"), ("trockene", "dry"),
    ("schwere", "heavy"), ("leichte", "light"), ("teure", "expensive"), ("billige", "cheap"),
]

PREDICATES = [
    ("müde", "tired"), ("fröhlich", "happy"), ("traurig", "unhappy"), ("klug", "smart"),
    ("krank", "ill"), ("stark", "mighty"), ("hungrig", "starving"), ("schön", "lovely"),
    ("alt", "aged"), ("neu", "fresh"), ("kalt", "chilly"), ("warm", "cosy"), ("laut", "noisy"),
    ("schnell", "quick"), ("teuer", "costly"),
    ("nass", "soaked"), ("schwer", "weighty"), ("stolz", "haughty"),
]

INTRANSITIVE = [
    ("schläft", "sleeps"), ("lacht", "laughs"), ("weint", "weeps"), ("singt", "sings"),
    ("tanzt", "dances"), ("wartet", "waits"), ("arbeitet", "works"), ("spielt", "plays"),
    ("schweigt", "hushes"), ("ruht", "rests"), ("hustet", "coughs"),
    ("niest", "sneezes"), ("flüstert", "whispers"), ("schreit", "shouts"), ("betet", "prays"),
    ("zittert", "trembles"), ("lächelt", "smiles"), ("träumt", "dreams"), ("wandert", "wanders"),
    ("schwimmt", "swims"), ("fliegt", "flies"), ("kriecht", "crawls"), ("springt", "jumps"),
    ("fällt", "falls"), ("wächst", "grows"), ("blüht", "blooms"), ("brennt", "burns"),
    ("glänzt", "shines"), ("rostet", "rusts"), ("verschwindet", "vanishes"),
]

TRANSITIVE = [
    ("sieht", "sees"), ("findet", "finds"), ("trägt", "carries"), ("kauft", "purchases"),
    ("verkauft", "sells"), ("sucht", "seeks"), ("hält", "holds"), ("wirft", "throws"),
    ("fängt", "catches"), ("baut", "builds"), ("repariert", "repairs"), ("malt", "paints"),
    ("versteckt", "hides"), ("bringt", "brings"), ("holt", "fetches"), ("zeigt", "shows"),
    ("öffnet", "opens"), ("schließt", "closes"), ("füllt", "fills"), ("wäscht", "washes"),
    ("zieht", "pulls"), ("schiebt", "pushes"), ("teilt", "shares"), ("bemerkt", "notices"),
    ("beobachtet", "watches"), ("vergisst", "forgets"), ("liebt", "loves"), ("hasst", "hates"),
    ("braucht", "needs"), ("nimmt", "takes"),
]

ADVERBS = [
    ("heute", "today"), ("gestern", "yesterday"), ("oft", "often"), ("selten", "seldom"),
    ("leider", "unfortunately"), ("plötzlich", "suddenly"), ("langsam", "slowly"),
    ("sofort", "immediately"), ("draußen", "outside"), ("drinnen", "inside"), ("abends", "evenings"),
    ("morgens", "mornings"), ("nachts", "nightly"), ("hier", "here"), ("dort", "there"),
    ("immer", "always"), ("nie", "never"), ("manchmal", "sometimes"), ("gerne", "happily"),
    ("wieder", "again"), ("bald", "soon"), ("jetzt", "now"), ("vielleicht", "perhaps"),
    ("zusammen", "together"), ("allein", "alone"),
]

INTENSIFIERS = [("sehr", "very"), ("ziemlich", "rather"), ("wirklich", "really"), ("etwas", "somewhat")]
PREPOSITIONS = [("mit", "with"), ("ohne", "without"), ("neben", "beside"), ("hinter", "behind"), ("vor", "before")]


def mock_entries(function):
    src = (ROOT / "src" / "mock_data.cpp").read_text(encoding="utf-8")
    body = re.search(function + r"\(\) \{(.*?)\n\}", src, re.S).group(1)
    return re.findall(r'\{"([^"]+)", "([^"]+)"\}', body)


def cap(w):
    return w[:1].upper() + w[1:]


class Grammar:
    def __init__(self, rng, nouns):
        self.rng = rng
        self.nouns = nouns

    def np(self, adjective=False):
        det, de, en = self.rng.choice(self.nouns)
        if adjective:
            a_de, a_en = self.rng.choice(ADJECTIVES)
            return [det, a_de, de], ["the", a_en, en]
        return [det, de], ["the", en]

    def sentence(self):
        r = self.rng
        kind = r.randrange(5)
        if kind == 0:
            s_de, s_en = self.np(adjective=True)
            v = r.choice(INTRANSITIVE)
            a = r.choice(ADVERBS)
            de, en = s_de + [v[0], a[0]], s_en + [v[1], a[1]]
        elif kind == 1:
            s_de, s_en = self.np(r.random() < 0.5)
            v = r.choice(TRANSITIVE)
            o_de, o_en = self.np(r.random() < 0.5)
            de, en = s_de + [v[0]] + o_de, s_en + [v[1]] + o_en
        elif kind == 2:
            a = r.choice(ADVERBS)
            v = r.choice(TRANSITIVE)
            s_de, s_en = self.np()
            o_de, o_en = self.np(adjective=True)
            de, en = [a[0], v[0]] + s_de + o_de, [a[1], v[1]] + s_en + o_en
        elif kind == 3:
            s_de, s_en = self.np(r.random() < 0.5)
            i = r.choice(INTENSIFIERS)
            p = r.choice(PREDICATES)
            de, en = s_de + ["ist", i[0], p[0]], s_en + ["is", i[1], p[1]]
        else:
            s_de, s_en = self.np()
            v = r.choice(INTRANSITIVE)
            p = r.choice(PREPOSITIONS)
            o_de, o_en = self.np(r.random() < 0.5)
            de, en = s_de + [v[0], p[0]] + o_de, s_en + [v[1], p[1]] + o_en
        de[0], en[0] = cap(de[0]), cap(en[0])
        de[-1] += "."
        en[-1] += "."
        return " ".join(de), " ".join(en)


def generate(grammar, count, seen):
    out = []
    while len(out) < count:
        pair = grammar.sentence()
        if pair[0] in seen:
            continue
        seen.add(pair[0])
        out.append(pair)
    return out


def write(stem, pairs):
    stem.parent.mkdir(parents=True, exist_ok=True)
    stem.with_name(stem.name + ".de").write_text("".join(p[0] + "\n" for p in pairs), encoding="utf-8")
    stem.with_name(stem.name + ".en").write_text("".join(p[1] + "\n" for p in pairs), encoding="utf-8")


def main():
    mock_nouns = mock_entries("nouns")
    mock_words = {de.lower(): en for de, en in mock_nouns + mock_entries("verbs") + mock_entries("function_words")}
    natural = {w.lower() for _, w, _ in NOUNS}
    assert not natural & {de.lower() for de, _ in mock_nouns}, "natural nouns must not overlap the mock nouns"
    lexicon = {}
    for de, en in ([(n, e) for _, n, e in NOUNS] + ADJECTIVES + PREDICATES + INTRANSITIVE + TRANSITIVE +
                   ADVERBS + INTENSIFIERS + PREPOSITIONS):
        assert lexicon.setdefault(de, en) == en, f"ambiguous entry {de}"
        if de.lower() in mock_words:
            assert mock_words[de.lower()] == en, f"{de}: {en} disagrees with the mock lexicon"

    rng = random.Random(4242)
    seen = set()
    nat = Grammar(rng, NOUNS)
    train = generate(nat, 900, seen)
    valid = generate(nat, 150, seen)

    # Test: half of the noun slots come from the mock noun list, whose
    # articles are fixed here (mock sentences never use articles).
    genders = {"Eule": "die", "Katze": "die", "Maus": "die", "Blume": "die", "Sonne": "die", "Tür": "die",
               "Straße": "die", "Stadt": "die", "Insel": "die", "Brücke": "die", "Schule": "die", "Musik": "die",
               "Uhr": "die", "Lampe": "die", "Zeitung": "die", "Milch": "die", "Suppe": "die", "Tasche": "die",
               "Kerze": "die", "Wolke": "die"}
    neuter = {"Haus", "Buch", "Pferd", "Brot", "Wasser", "Fenster", "Auto", "Schiff", "Dorf", "Meer", "Lied",
              "Bild", "Hemd", "Spiel"}
    test_nouns = [(genders.get(de, "das" if de in neuter else "der"), de, en) for de, en in mock_nouns]
    mixed = Grammar(rng, NOUNS + test_nouns * 2)
    test = generate(mixed, 300, seen)

    out = ROOT / "data" / "fixtures" / "natural"
    write(out / "nat-train", train)
    write(out / "nat-valid", valid)
    write(out / "test", test)


if __name__ == "__main__":
    main()
