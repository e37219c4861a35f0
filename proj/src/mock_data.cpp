#include "cforge/mock_backend.hpp"

namespace cforge::llm::mock_data {

const std::vector<Entry> &nouns() {
    static const std::vector<Entry> words{
        {"Eule", "owl"},      {"Hund", "dog"},         {"Katze", "cat"},       {"Maus", "mouse"},
        {"Haus", "house"},    {"Buch", "book"},        {"Baum", "tree"},       {"Garten", "garden"},
        {"Blume", "flower"},  {"Vogel", "bird"},       {"Fisch", "fish"},      {"Pferd", "horse"},
        {"Apfel", "apple"},   {"Brot", "bread"},       {"Käse", "cheese"},     {"Wasser", "water"},
        {"Tisch", "table"},   {"Stuhl", "chair"},      {"Fenster", "window"},  {"Tür", "door"},
        {"Auto", "car"},      {"Zug", "train"},        {"Schiff", "ship"},     {"Straße", "street"},
        {"Stadt", "city"},    {"Dorf", "village"},     {"Berg", "mountain"},   {"Fluss", "river"},
        {"See", "lake"},      {"Wald", "forest"},      {"Sonne", "sun"},       {"Mond", "moon"},
        {"Stern", "star"},    {"Regen", "rain"},       {"Schnee", "snow"},     {"Wind", "wind"},
        {"Himmel", "sky"},    {"Meer", "sea"},         {"Insel", "island"},    {"Brücke", "bridge"},
        {"Schule", "school"}, {"Lehrer", "teacher"},   {"Arzt", "doctor"},     {"Bäcker", "baker"},
        {"Musik", "music"},   {"Lied", "song"},        {"Bild", "picture"},    {"Uhr", "clock"},
        {"Lampe", "lamp"},    {"Schlüssel", "key"},    {"Brief", "letter"},    {"Zeitung", "newspaper"},
        {"Kaffee", "coffee"}, {"Tee", "tea"},          {"Milch", "milk"},      {"Kuchen", "cake"},
        {"Suppe", "soup"},    {"Hemd", "shirt"},       {"Schuh", "shoe"},      {"Hut", "hat"},
        {"Tasche", "bag"},    {"Ball", "ball"},        {"Spiel", "game"},      {"Kerze", "candle"},
        {"Wolke", "cloud"},   {"Frosch", "frog"},      {"Bär", "bear"},        {"Wolf", "wolf"},
        {"Fuchs", "fox"},     {"Hase", "rabbit"},
    };
    return words;
}

const std::vector<Entry> &verbs() {
    static const std::vector<Entry> words{
        {"laufen", "run"},       {"singen", "sing"},      {"tanzen", "dance"},    {"lesen", "read"},
        {"schreiben", "write"},  {"kochen", "cook"},      {"spielen", "play"},    {"schwimmen", "swim"},
        {"arbeiten", "work"},    {"lachen", "laugh"},     {"weinen", "cry"},      {"schlafen", "sleep"},
        {"essen", "eat"},        {"trinken", "drink"},    {"malen", "paint"},     {"bauen", "build"},
        {"fahren", "drive"},     {"fliegen", "fly"},      {"wandern", "hike"},    {"lernen", "learn"},
        {"lehren", "teach"},     {"reisen", "travel"},    {"sprechen", "speak"},  {"hören", "listen"},
        {"denken", "think"},     {"träumen", "dream"},    {"warten", "wait"},     {"helfen", "help"},
        {"rufen", "call"},       {"springen", "jump"},    {"klettern", "climb"},  {"rennen", "sprint"},
        {"segeln", "sail"},      {"angeln", "angle"},     {"zeichnen", "draw"},   {"putzen", "clean"},
        {"pflanzen", "plant"},   {"feiern", "celebrate"}, {"rudern", "row"},      {"reiten", "ride"},
        {"nähen", "sew"},        {"stricken", "knit"},
    };
    return words;
}

const std::vector<Entry> &function_words() {
    static const std::vector<Entry> words{
        {"ich", "I"},          {"sehe", "see"},          {"heute", "today"},      {"wir", "we"},
        {"mögen", "like"},     {"sehr", "very"},         {"dort", "there"},       {"steht", "stands"},
        {"allein", "alone"},   {"mein", "my"},           {"freund", "friend"},    {"sucht", "seeks"},
        {"oft", "often"},      {"kaufen", "buy"},        {"ist", "is"},           {"groß", "big"},
        {"das", "the"},        {"der", "the"},           {"die", "the"},          {"kind", "child"},
        {"malt", "paints"},    {"gern", "gladly"},       {"jeder", "everyone"},   {"kennt", "knows"},
        {"gut", "well"},       {"jeden", "every"},       {"tag", "day"},          {"sie", "they"},
        {"kinder", "children"}, {"draußen", "outside"},  {"will", "want"},        {"können", "can"},
        {"alle", "all"},       {"zusammen", "together"}, {"meine", "my"},         {"eltern", "parents"},
        {"morgen", "tomorrow"}, {"wieder", "again"},     {"auch", "also"},        {"immer", "always"},
        {"nun", "now"},        {"bestimmt", "certainly"}, {"trotzdem", "nevertheless"}, {"schon", "already"},
        {"ein", "a"},          {"eine", "a"},            {"ruft", "calls"},       {"durch", "through"},
        {"nacht", "night"},    {"und", "and"},
    };
    return words;
}

const std::vector<std::string_view> &noun_frames() {
    static const std::vector<std::string_view> frames{
        "Ich sehe {w} heute.",    "Wir mögen {w} sehr.",      "Dort steht {w} allein.",
        "Mein Freund sucht {w} oft.", "Heute kaufen wir {w}.", "{w} ist sehr groß.",
        "Das Kind malt {w} gern.", "Jeder kennt {w} gut.",
    };
    return frames;
}

const std::vector<std::string_view> &verb_frames() {
    static const std::vector<std::string_view> frames{
        "Wir {w} jeden Tag.",  "Sie {w} sehr gern.",  "Kinder {w} draußen.",   "Ich will heute {w}.",
        "Wir können gut {w}.", "Alle {w} zusammen.",  "Meine Eltern {w} oft.", "Morgen {w} wir dort.",
    };
    return frames;
}

const std::vector<std::string_view> &suffixes() {
    static const std::vector<std::string_view> words{"", "wieder", "auch", "immer", "nun", "bestimmt", "trotzdem", "schon"};
    return words;
}

} // namespace cforge::llm::mock_data
