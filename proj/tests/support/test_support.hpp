#pragma once

// Hand-rolled generators and fixture helpers shared by the test binaries.

#include "cforge/corpus.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace cforge::testing {

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::size_t size(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    template <class T> const T &pick(const std::vector<T> &items) { return items[size(0, items.size() - 1)]; }

    // Code points are drawn from `alphabet` (a list of UTF-8 strings).
    std::string word(const std::vector<std::string> &alphabet, std::size_t lo = 1, std::size_t hi = 8) {
        std::string w;
        for (std::size_t i = size(lo, hi); i > 0; --i) w += pick(alphabet);
        return w;
    }

    std::vector<std::string> tokens(const std::vector<std::string> &vocab, std::size_t lo, std::size_t hi) {
        std::vector<std::string> out(size(lo, hi));
        for (auto &t : out) t = pick(vocab);
        return out;
    }

    std::string line(const std::vector<std::string> &vocab, std::size_t lo, std::size_t hi) {
        std::string out;
        for (const auto &t : tokens(vocab, lo, hi)) {
            if (!out.empty()) out += ' ';
            out += t;
        }
        return out;
    }

    // Natural corpus with ids "<prefix>-<i>".
    corpus::ParallelCorpus corpus(std::size_t pairs, const std::vector<std::string> &vocab, std::size_t lo,
                                  std::size_t hi, std::string_view prefix = "p") {
        corpus::ParallelCorpus c{{}, "de", "en"};
        for (std::size_t i = 0; i < pairs; ++i) {
            c.pairs.push_back({std::string(prefix) + "-" + std::to_string(i), line(vocab, lo, hi), line(vocab, lo, hi),
                               corpus::Origin::natural, std::nullopt});
        }
        return c;
    }

    std::mt19937_64 &engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

inline const std::vector<std::string> &latin_alphabet() {
    static const std::vector<std::string> a{"a", "b", "c", "d", "e", "f", "g", "h", "i", "k", "l", "m", "n", "o"};
    return a;
}

inline const std::vector<std::string> &mixed_alphabet() {
    static const std::vector<std::string> a{"a", "e", "n", "r", "s", "t", "ä", "ö", "ü", "ß", "é", "@", "-", "."};
    return a;
}

inline std::vector<std::string> vocabulary(Gen &g, std::size_t n, const std::vector<std::string> &alphabet) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(g.word(alphabet, 1, 7));
    return v;
}

inline std::filesystem::path source_dir() { return CFORGE_SOURCE_DIR; }

inline std::filesystem::path natural_fixture(std::string_view name) {
    return source_dir() / "data" / "fixtures" / "natural" / std::string(name);
}

class TempDir {
  public:
    explicit TempDir(std::string_view tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("cforge-" + std::string(tag) + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;

    const std::filesystem::path &path() const { return path_; }
    std::filesystem::path operator/(std::string_view rel) const { return path_ / std::string(rel); }

  private:
    std::filesystem::path path_;
};

inline corpus::SentencePair natural_pair(std::string id, std::string src, std::string tgt) {
    return {std::move(id), std::move(src), std::move(tgt), corpus::Origin::natural, std::nullopt};
}

} // namespace cforge::testing
