// Copyright 2026 The CAS Workbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cas/synthetic.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cas/errors.h"

namespace cas {
namespace {

using Words = std::vector<std::string>;

struct Event {
  const char* key;        // document sentence
  const char* reference;  // summary sentence
  std::vector<const char*> x;  // event-specific noun phrases
};

// {P} person, {O} organization, {L} place: entities. {R} role and {X}
// event phrase: noun phrases. {D} day, {N} count, {A} age.
const std::vector<Event>& events() {
  static const std::vector<Event> kEvents = {
      {"{P} , the {R} of {O} , resigned on {D} after {X} .",
       "{P} has resigned as {R} of {O} after {X} .",
       {"a row over expenses", "months of criticism", "a long illness",
        "a failed merger", "weak sales figures"}},
      {"police in {L} arrested {P} on {D} on suspicion of {X} .",
       "{P} has been arrested in {L} on suspicion of {X} .",
       {"fraud", "money laundering", "dangerous driving", "arson",
        "theft from a warehouse"}},
      {"{P} won the {X} at a ceremony in {L} on {D} night .",
       "{P} has won the {X} in {L} .",
       {"best actor award", "national book prize", "young scientist medal",
        "lifetime achievement award"}},
      {"{O} opened a new {X} in {L} on {D} , creating {N} jobs .",
       "{O} has opened a {X} in {L} , creating {N} jobs .",
       {"factory", "distribution centre", "research lab", "call centre",
        "hospital wing"}},
      {"{O} confirmed on {D} that its {X} in {L} will close with the loss of "
       "{N} jobs .",
       "{N} jobs will be lost after {O} closes its {X} in {L} .",
       {"factory", "distribution centre", "head office", "steel plant"}},
      {"{P} , a former {R} of {O} , died at home in {L} on {D} aged {A} .",
       "former {O} {R} {P} has died aged {A} .",
       {}},
      {"{O} signed {P} on {D} in a deal worth {N} million pounds .",
       "{P} has joined {O} in a deal worth {N} million pounds .",
       {}},
      {"{X} hit {L} on {D} , forcing {N} families from their homes .",
       "{N} families were forced from their homes after {X} hit {L} .",
       {"severe flooding", "a major storm", "a large fire", "heavy snow"}},
  };
  return kEvents;
}

// {Q} other person, {M} other organization, {K} other place, {Y} landmark.
const std::vector<const char*>& background() {
  static const std::vector<const char*> kBackground = {
      "{K} has a population of about {N} people and is known for its {Y} .",
      "a spokesperson for {M} said the situation was being monitored "
      "closely .",
      "{Q} , who lives in {K} , said people in the area were worried .",
      "local councillors will meet next week to discuss the matter .",
      "it is the {T} such case in the region this year .",
      "more details are expected to be released later .",
      "{O} was founded in {L} in {Z} .",
      "figures published last year showed a rise in similar incidents .",
      "residents have been asked to contact the authorities with any "
      "information .",
      "{M} has not commented on the reports .",
      "the news was welcomed by {Q} , a campaigner from {K} .",
      "the area around {K} has seen several changes in recent years .",
  };
  return kBackground;
}

const std::vector<const char*> kRoles = {"chief executive", "finance director",
                                         "chairman", "head coach",
                                         "deputy leader"};
const std::vector<const char*> kDays = {"monday", "tuesday", "wednesday",
                                        "thursday", "friday", "saturday",
                                        "sunday"};
const std::vector<const char*> kLandmarks = {"market", "harbour",
                                             "football club", "cathedral",
                                             "university"};
const std::vector<const char*> kOrdinals = {"second", "third", "fourth",
                                            "fifth"};
const std::vector<const char*> kOrgKinds = {"Group", "Council", "Trust",
                                            "Bank", "Union", "Foundation",
                                            "Holdings", "United"};

Words split_spaces(const std::string& text) {
  Words out;
  std::istringstream in(text);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

class World {
 public:
  explicit World(std::uint64_t seed) : rng_(seed) {
    std::set<std::string> used;
    firsts_ = names(120, used);
    lasts_ = names(200, used);
    places_ = names(80, used);
    for (const auto& head : names(60, used)) {
      orgs_.push_back(head + " " + pick(kOrgKinds));
    }
  }

  std::mt19937_64& rng() { return rng_; }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
    return pool[d(rng_)];
  }
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  std::string person() { return pick(firsts_) + " " + pick(lasts_); }
  const std::string& place() { return pick(places_); }
  const std::string& org() { return pick(orgs_); }

 private:
  std::string pseudo_word() {
    static const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n",
                                    "p", "r", "s", "t", "v", "z", "br", "tr",
                                    "gr", "st", "th", "sh"};
    static const char* kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou",
                                    "ae"};
    static const char* kCodas[] = {"", "", "n", "r", "l", "s", "th", "x",
                                   "nd", "m"};
    std::string w;
    const int syllables = uniform(2, 3);
    for (int s = 0; s < syllables; ++s) {
      w += kOnsets[uniform(0, 19)];
      w += kVowels[uniform(0, 7)];
      if (s == syllables - 1) w += kCodas[uniform(0, 9)];
    }
    w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
  }

  Words names(int count, std::set<std::string>& used) {
    Words out;
    while (static_cast<int>(out.size()) < count) {
      std::string w = pseudo_word();
      if (used.insert(w).second) out.push_back(w);
    }
    return out;
  }

  std::mt19937_64 rng_;
  Words firsts_, lasts_, places_, orgs_;
};

// The slot fillers shared by one document and its reference.
struct Cast {
  std::map<char, std::string> slots;
};

struct Expansion {
  Words words;
  std::vector<Span> entities;
  std::vector<Span> noun_phrases;
};

Expansion expand(const std::string& tmpl, const Cast& cast) {
  Expansion out;
  for (const auto& piece : split_spaces(tmpl)) {
    if (piece.size() == 3 && piece[0] == '{' && piece[2] == '}') {
      const char slot = piece[1];
      const Words filler = split_spaces(cast.slots.at(slot));
      const int start = static_cast<int>(out.words.size());
      out.words.insert(out.words.end(), filler.begin(), filler.end());
      const Span span{start, static_cast<int>(out.words.size()),
                      SpanKind::kEntity};
      if (slot == 'P' || slot == 'O' || slot == 'L') {
        out.entities.push_back(span);
      } else if (slot == 'R' || slot == 'X') {
        out.noun_phrases.push_back({span.start, span.end,
                                    SpanKind::kNounPhrase});
      }
    } else {
      out.words.push_back(piece);
    }
  }
  if (!out.words.empty()) {
    auto& first = out.words.front();
    first[0] = static_cast<char>(
        std::toupper(static_cast<unsigned char>(first[0])));
  }
  return out;
}

std::string join(const Words& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

DatasetRecord make_record(World& world, const SyntheticConfig& config,
                          std::string id) {
  const Event& event = world.pick(events());
  Cast cast;
  cast.slots['P'] = world.person();
  cast.slots['O'] = world.org();
  cast.slots['L'] = world.place();
  // Background sentences mention the key cast about half of the time.
  cast.slots['Q'] = world.uniform(0, 1) ? cast.slots['P'] : world.person();
  cast.slots['M'] = world.uniform(0, 1) ? cast.slots['O'] : world.org();
  cast.slots['K'] = world.uniform(0, 1) ? cast.slots['L'] : world.place();
  cast.slots['R'] = world.pick(kRoles);
  cast.slots['X'] = event.x.empty() ? "" : world.pick(event.x);
  cast.slots['D'] = world.pick(kDays);
  cast.slots['N'] = std::to_string(world.uniform(2, 60) * 10);
  cast.slots['A'] = std::to_string(world.uniform(55, 94));
  cast.slots['Y'] = world.pick(kLandmarks);
  cast.slots['T'] = world.pick(kOrdinals);
  cast.slots['Z'] = std::to_string(world.uniform(1850, 1990));

  const int n = world.uniform(config.min_sentences, config.max_sentences);
  const int key_at = world.uniform(2, n - 1);
  std::vector<std::size_t> order(background().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), world.rng());

  Words doc;
  std::size_t next_bg = 0;
  for (int s = 0; s < n; ++s) {
    const std::string tmpl =
        s == key_at ? event.key : background()[order[next_bg++]];
    const Words w = expand(tmpl, cast).words;
    doc.insert(doc.end(), w.begin(), w.end());
  }
  const Expansion ref = expand(event.reference, cast);

  DatasetRecord rec;
  rec.id = std::move(id);
  rec.document = TextField::from_raw(join(doc));
  rec.reference = TextField::from_raw(join(ref.words));
  rec.entities = ref.entities;
  rec.noun_phrases = ref.noun_phrases;
  return rec;
}

std::string numbered(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%05d", prefix, i);
  return buf;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SyntheticConfig& config) {
  if (config.num_train < 0 || config.num_test < 0) {
    throw ConfigError("synthetic corpus sizes must be nonnegative");
  }
  if (config.min_sentences < 3 || config.max_sentences < config.min_sentences ||
      config.max_sentences > static_cast<int>(background().size()) + 1) {
    throw ConfigError("synthetic sentence range must lie within 3.." +
                      std::to_string(background().size() + 1));
  }
  World world(config.seed);
  SyntheticCorpus corpus;
  for (int i = 0; i < config.num_train; ++i) {
    corpus.train.push_back(make_record(world, config, numbered("train", i)));
  }
  for (int i = 0; i < config.num_test; ++i) {
    corpus.test.push_back(make_record(world, config, numbered("test", i)));
  }
  return corpus;
}

}  // namespace cas
