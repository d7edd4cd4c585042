#pragma once

// Synthetic corpora with controlled co-occurrence structure. Generators are
// pure functions of their seed.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "lsakit/corpusio.hpp"

namespace synth {

using Docs = std::vector<std::vector<std::string>>;

inline std::string w(const std::string& stem, std::size_t i) { return stem + std::to_string(i); }

inline lsakit::corpusio::Corpus to_corpus(const Docs& docs) {
  lsakit::corpusio::Corpus c;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    lsakit::corpusio::Paragraph p;
    p.id = "0." + std::to_string(i);
    p.tokens = docs[i];
    p.sentence_lengths = {docs[i].size()};
    c.paragraphs.push_back(std::move(p));
  }
  return c;
}

inline std::vector<std::size_t> pick(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// Association corpus. Stimulus "stim<i>" owns a block of `block` paragraphs
// with its own topical filler. Responses "resp<i>_<r>" each occur in `occ`
// paragraphs in total; ranks 0..2 put 20/10/5 percent of the block's
// paragraphs next to the stimulus, the rest in a shared neutral pool.
// Ranks 3..5 never meet the stimulus.
struct AssocSpec {
  std::size_t stimuli = 8;
  std::size_t block = 100;
  std::size_t occ = 20;
  std::size_t neutral = 400;
  std::size_t topic_words = 12;
  std::size_t general_words = 80;
  std::uint64_t seed = 7;
};

inline std::string resp(std::size_t s, std::size_t r) {
  return "resp" + std::to_string(s) + "x" + std::to_string(r);
}

inline Docs assoc_corpus(const AssocSpec& spec = {}) {
  std::mt19937_64 rng(spec.seed);
  const std::size_t rates[6] = {spec.block / 5, spec.block / 10, spec.block / 20, 0, 0, 0};
  Docs docs(spec.stimuli * spec.block + spec.neutral);
  std::uniform_int_distribution<std::size_t> gen(0, spec.general_words - 1);
  std::uniform_int_distribution<std::size_t> top(0, spec.topic_words - 1);
  for (std::size_t s = 0; s < spec.stimuli; ++s)
    for (std::size_t p = 0; p < spec.block; ++p) {
      auto& d = docs[s * spec.block + p];
      d.push_back(w("stim", s));
      for (int i = 0; i < 3; ++i) d.push_back(w("topic" + std::to_string(s) + "x", top(rng)));
      for (int i = 0; i < 3; ++i) d.push_back(w("gen", gen(rng)));
    }
  for (std::size_t p = 0; p < spec.neutral; ++p) {
    auto& d = docs[spec.stimuli * spec.block + p];
    for (int i = 0; i < 5; ++i) d.push_back(w("gen", gen(rng)));
  }
  for (std::size_t s = 0; s < spec.stimuli; ++s)
    for (std::size_t r = 0; r < 6; ++r) {
      for (auto p : pick(rng, spec.block, rates[r])) docs[s * spec.block + p].push_back(resp(s, r));
      for (auto p : pick(rng, spec.neutral, spec.occ - rates[r]))
        docs[spec.stimuli * spec.block + p].push_back(resp(s, r));
    }
  return docs;
}

// Two disjoint topics; no paragraph mixes them.
inline Docs two_topic_corpus(std::uint64_t seed = 11, std::size_t per_topic = 60) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pickw(0, 19);
  Docs docs;
  for (std::size_t p = 0; p < 2 * per_topic; ++p) {
    const std::string stem = p % 2 == 0 ? "alpha" : "beta";
    std::vector<std::string> d;
    for (int i = 0; i < 8; ++i) d.push_back(w(stem, pickw(rng)));
    docs.push_back(std::move(d));
  }
  return docs;
}

// Random paragraphs over three loose topics plus a shared core. Every
// "core<i>" and "t<j>x<i>" term for small i occurs early.
inline Docs trace_corpus(std::size_t n = 200, std::uint64_t seed = 5) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> topic(0, 2), tw(0, 14), cw(0, 9), len(4, 9);
  Docs docs;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t t = topic(rng);
    std::vector<std::string> d;
    const std::size_t m = len(rng);
    for (std::size_t i = 0; i < m; ++i) d.push_back(i % 3 == 2 ? w("core", cw(rng)) : w("t" + std::to_string(t) + "x", tw(rng)));
    docs.push_back(std::move(d));
  }
  return docs;
}

// x and y never share a paragraph. Both are introduced early with unrelated
// company; later paragraphs put each of them with the same bridge words.
inline Docs bridge_corpus(std::size_t start = 20, std::size_t later = 60, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> bw(0, 5), fw(0, 29);
  Docs docs;
  for (std::size_t p = 0; p < start; ++p) {
    std::vector<std::string> d;
    for (int i = 0; i < 5; ++i) d.push_back(w("filler", fw(rng)));
    if (p == 1) d.push_back("xword");
    if (p == 2) d.push_back("yword");
    if (p == 1) d.push_back("xmate");
    if (p == 2) d.push_back("ymate");
    if (p == 5 || p == 9) d.push_back(w("bridge", p % 6));
    docs.push_back(std::move(d));
  }
  for (std::size_t p = 0; p < later; ++p) {
    std::vector<std::string> d;
    for (int i = 0; i < 3; ++i) d.push_back(w("bridge", bw(rng)));
    for (int i = 0; i < 2; ++i) d.push_back(w("filler", fw(rng)));
    if (p % 3 == 0) d.push_back("xword");
    if (p % 3 == 1) d.push_back("yword");
    docs.push_back(std::move(d));
  }
  return docs;
}

// Forty paragraphs for the three-proposition gardener story, no randomness.
// Gardening and flower words form two groups joined by "grow"; cat words
// form a third. Two paragraphs put gardener, grow and roses next to the cat.
// "throw" only ever appears with "flower". "man" is in every paragraph once,
// so its global weight is 0.
inline Docs gardener_corpus() {
  using List = std::vector<std::string>;
  const List garden{"gardener", "garden", "border", "vegetables", "radish", "soil"};
  const List flower{"roses", "flowers", "bouquet", "violets", "petals", "tulip"};
  const List cat{"cat", "meow", "purr", "kitten", "whiskers", "miaow", "fur", "tail"};
  Docs docs;
  // paragraph i takes `width` consecutive words of the list starting at i
  const auto rotate = [&](const List& words, std::size_t count, std::size_t width, const List& lead) {
    for (std::size_t i = 0; i < count; ++i) {
      List d{"man"};
      d.insert(d.end(), lead.begin(), lead.end());
      for (std::size_t j = 0; j < width; ++j) d.push_back(words[(i + j) % words.size()]);
      docs.push_back(std::move(d));
    }
  };
  rotate(garden, 8, 3, {});
  rotate(flower, 8, 3, {"flower"});
  docs.push_back({"man", "grow", "gardener", "garden"});
  docs.push_back({"man", "grow", "vegetables", "radish"});
  docs.push_back({"man", "grow", "roses", "flowers"});
  docs.push_back({"man", "grow", "tulip", "violets"});
  rotate(cat, 12, 3, {});
  docs.push_back({"man", "cat", "gardener", "grow", "roses"});
  docs.push_back({"man", "meow", "gardener", "roses"});
  rotate(flower, 6, 2, {"throw", "flower"});
  return docs;
}

inline const char* gardener_story() { return "grow(gardener,roses)\nmeow(cat)\nthrow(man,flower)\n"; }

inline bool is_flower_word(const std::string& t) {
  for (const char* f : {"roses", "flowers", "bouquet", "violets", "petals", "tulip", "flower"})
    if (t == f) return true;
  return false;
}

}  // namespace synth
