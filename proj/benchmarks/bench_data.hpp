#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace factcheck::bench {

struct Doc {
  std::string text;
  std::size_t label = 0;
};

/// Class-specific terms mixed with shared noise, like a small topical corpus.
inline std::vector<Doc> make_docs(std::size_t classes, std::size_t per_class, std::size_t words,
                                  std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> term(0, 19), noise(0, 199), coin(0, 1);
  std::vector<Doc> docs;
  for (std::size_t k = 0; k < classes; ++k) {
    for (std::size_t n = 0; n < per_class; ++n) {
      Doc d{"Claim: ", k};
      for (std::size_t w = 0; w < words; ++w) {
        d.text += coin(rng) ? "c" + std::to_string(k) + "t" + std::to_string(term(rng))
                            : "Noise-" + std::to_string(noise(rng)) + ",";
        d.text += ' ';
      }
      docs.push_back(std::move(d));
    }
  }
  return docs;
}

}  // namespace factcheck::bench
