#include "cascade/fixture.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_set>

#include "cascade/rng.hpp"
#include "cascade/text.hpp"
#include "json.hpp"

namespace cascade {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::int64_t kEpochBase = 1451606400;  // 2016-01-01

// --- Word pools -------------------------------------------------------------

const std::vector<std::string> kFiller = {
    "the",     "a",        "people",  "today",   "story",   "reading",
    "morning", "evening",  "while",   "about",   "thing",   "maybe",
    "around",  "someone",  "looking", "quietly", "simply",  "often",
    "moment",  "window",   "street",  "coffee",  "paper",   "walking",
    "thinking","notes",    "little",  "really",  "again",   "still",
    "kind",    "sort",     "place",   "home",    "city",    "day",
    "week",    "light",    "slow",    "gentle",  "corner",  "garden",
    "letter",  "winter",   "summer",  "river",   "cloud",   "shelf"};

struct TopicGroup {
  const char* path;
  std::vector<std::string> terms;
};

const std::vector<TopicGroup>& topic_groups() {
  static const std::vector<TopicGroup> groups = {
      {"religion and spirituality",
       {"scripture", "sermon", "prophet", "worship", "pilgrimage", "clergy",
        "theology", "sacred"}},
      {"society/unrest and war",
       {"uprising", "riot", "insurgency", "warzone", "militia", "rebellion",
        "skirmish", "unrest"}},
      {"society/racism",
       {"racism", "segregation", "slur", "bigotry", "racial", "prejudice",
        "discrimination", "xenophobia"}},
      {"society/personal offense/hate crime",
       {"hatecrime", "lynching", "vandalism", "harassment", "defacement",
        "assault", "intimidation", "smearing"}},
      {"law, govt & politics/espionage and intelligence/terrorism",
       {"terrorism", "extremist", "militant", "bombing", "radicalization",
        "jihadist", "plot", "recruiter"}},
      {"law, govt & politics/legal issues/human rights",
       {"humanrights", "asylum", "refugee", "deportation", "persecution",
        "amnesty", "citizenship", "tribunal"}},
  };
  return groups;
}

const std::vector<TopicGroup>& noise_groups() {
  static const std::vector<TopicGroup> groups = {
      {"sports/football",
       {"touchdown", "quarterback", "playoffs", "stadium", "league",
        "goalkeeper", "referee", "transfer"}},
      {"technology/internet",
       {"software", "startup", "browser", "coding", "gadget", "server",
        "upgrade", "app"}},
      {"arts/music",
       {"concert", "album", "guitar", "melody", "orchestra", "lyrics",
        "drummer", "chorus"}},
      {"travel/tourism",
       {"itinerary", "passport", "hostel", "sightseeing", "landmark", "beach",
        "cruise", "souvenir"}},
      {"food/cooking",
       {"recipe", "baking", "spices", "oven", "dessert", "broth", "simmer",
        "garnish"}},
  };
  return groups;
}

const std::map<std::string, std::vector<std::string>>& tone_pools() {
  static const std::map<std::string, std::vector<std::string>> pools = {
      {"anger",
       {"furious", "rage", "seething", "outraged", "livid", "enraged",
        "wrath", "fuming", "irate", "boiling"}},
      {"fear",
       {"terrified", "dread", "panic", "frightened", "horror", "alarmed",
        "petrified", "anxious"}},
      {"joy",
       {"delighted", "cheerful", "joyful", "gleeful", "thrilled", "blissful",
        "merry", "jubilant"}},
      {"disgust",
       {"disgusting", "vile", "repulsive", "sickening", "revolting",
        "loathsome", "nauseating", "foul"}},
      {"sadness",
       {"mournful", "sorrow", "grieving", "weeping", "heartbroken", "gloomy",
        "despair", "melancholy"}},
      {"openness",
       {"curious", "imaginative", "exploring", "inventive", "wondering",
        "creative", "novel", "daring"}},
      {"conscientiousness",
       {"diligent", "organized", "punctual", "methodical", "careful",
        "orderly", "precise", "thorough"}},
      {"extraversion",
       {"outgoing", "sociable", "talkative", "lively", "gregarious",
        "energetic", "bubbly", "boisterous"}},
      {"agreeableness",
       {"kindly", "cooperative", "compassionate", "courteous", "warmhearted",
        "considerate", "amiable", "gracious"}},
      {"emotional_range",
       {"volatile", "moody", "temperamental", "erratic", "impulsive",
        "turbulent", "restless", "stormy"}},
      {"analytical",
       {"therefore", "analysis", "evidence", "hypothesis", "conclude",
        "premise", "statistics", "systematic"}},
      {"confident",
       {"certainly", "undoubtedly", "absolutely", "definitely", "assured",
        "surely", "unquestionably", "decisively"}},
      {"tentative",
       {"perhaps", "possibly", "seemingly", "apparently", "presumably",
        "arguably", "somewhat", "likely"}},
  };
  return pools;
}

const std::vector<std::string> kNegativeValence = {
    "hate",   "destroy",   "evil",  "filth", "scum",
    "worthless", "traitor", "enemy", "poison", "parasite"};
const std::vector<std::string> kPositiveValence = {
    "good", "love",    "wonderful", "hope",      "peace",
    "beautiful", "respect", "gratitude", "harmony", "bless"};

const std::vector<std::string> kGenericTags = {
    "life",   "news",    "thoughts", "daily",   "photo",  "mood",
    "music",  "travel",  "food",     "sports",  "tech",   "art",
    "quote",  "random",  "journal",  "friends", "weekend", "nature"};

const std::vector<std::string> kSeedTags = {
    "holystruggle", "racepurity",  "supremacistwave", "faithclash",
    "crusadecall",  "bloodline",   "radicalfront",    "zealotcry"};

// Non-English pools (lowercase so the ASCII case-folding is a no-op).
const std::vector<std::string> kSpanish = {
    "el",    "la",     "los",    "las",    "de",      "que",    "y",
    "en",    "un",     "una",    "es",     "por",     "con",    "para",
    "como",  "pero",   "más",    "este",   "esta",    "cuando", "hacer",
    "tiempo","vida",   "mundo",  "casa",   "ciudad",  "gente",  "siempre",
    "también","porque","entre",  "hasta",  "desde",   "muy",    "bien",
    "todo",  "nada",   "algo",   "día",    "noche",   "agua",   "tierra",
    "camino","historia","palabras","nuevo","viejo",   "grande", "pequeño"};
const std::vector<std::string> kFrench = {
    "le",    "la",     "les",    "de",     "des",     "un",     "une",
    "et",    "est",    "dans",   "pour",   "avec",    "sur",    "pas",
    "que",   "qui",    "mais",   "plus",   "tout",    "comme",  "bien",
    "jour",  "nuit",   "monde",  "ville",  "maison",  "gens",   "toujours",
    "aussi", "parce",  "entre",  "depuis", "très",    "rien",   "quelque",
    "chose", "temps",  "vie",    "eau",    "terre",   "chemin", "histoire",
    "mots",  "nouveau","vieux",  "grand",  "petit",   "beau",   "être"};
const std::vector<std::string> kGerman = {
    "der",   "die",    "das",    "und",    "ist",     "in",     "ein",
    "eine",  "mit",    "für",    "auf",    "nicht",   "dass",   "wie",
    "aber",  "mehr",   "wenn",   "machen", "zeit",    "leben",  "welt",
    "haus",  "stadt",  "menschen","immer", "auch",    "weil",   "zwischen",
    "seit",  "sehr",   "gut",    "alles",  "nichts",  "etwas",  "tag",
    "nacht", "wasser", "erde",   "weg",    "geschichte","worte","neu",
    "alt",   "groß",   "klein",  "schön",  "sein",    "haben",  "werden"};
const std::vector<std::string> kItalian = {
    "il",    "la",     "le",     "di",     "che",     "e",      "in",
    "un",    "una",    "è",      "per",    "con",     "come",   "ma",
    "più",   "questo", "questa", "quando", "fare",    "tempo",  "vita",
    "mondo", "casa",   "città",  "gente",  "sempre",  "anche",  "perché",
    "tra",   "fino",   "da",     "molto",  "bene",    "tutto",  "niente",
    "qualcosa","giorno","notte", "acqua",  "terra",   "strada", "storia",
    "parole","nuovo",  "vecchio","grande", "piccolo", "bello",  "essere"};

const std::vector<std::string>& pool_for(const std::string& lang) {
  if (lang == "es") return kSpanish;
  if (lang == "fr") return kFrench;
  if (lang == "de") return kGerman;
  if (lang == "it") return kItalian;
  return kFiller;
}

// --- Text assembly -----------------------------------------------------------

class DescriptionBuilder {
 public:
  explicit DescriptionBuilder(Rng& rng) : rng_(rng) {}

  // k distinct terms from pool (or all of them when k >= pool size).
  void sample_distinct(const std::vector<std::string>& pool, std::size_t k) {
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng_.shuffle(order);
    for (std::size_t i = 0; i < std::min(k, pool.size()); ++i) {
      words_.push_back(pool[order[i]]);
    }
  }

  void sample(const std::vector<std::string>& pool, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      words_.push_back(pool[rng_.bounded(pool.size())]);
    }
  }

  void push(const std::string& word) { words_.push_back(word); }

  std::size_t size() const { return words_.size(); }

  std::string assemble(Rng& rng) {
    rng.shuffle(words_);
    std::string out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (i) out += (rng.bounded(9) == 0) ? ", " : " ";
      out += words_[i];
    }
    out += ".";
    return out;
  }

 private:
  Rng& rng_;
  std::vector<std::string> words_;
};

// Jitter that survives normalize+casefold: case flips, doubled spaces,
// stripped symbols, trailing whitespace.
std::string jitter_duplicate(const std::string& description, Rng& rng) {
  std::string out;
  out.reserve(description.size() + 8);
  if (rng.bounded(2) == 0) out += "  ";
  for (char c : description) {
    if (c >= 'a' && c <= 'z' && rng.bounded(6) == 0) {
      out.push_back(static_cast<char>(c - 'a' + 'A'));
    } else {
      out.push_back(c);
    }
    if (c == ' ' && rng.bounded(8) == 0) out.push_back(' ');
  }
  switch (rng.bounded(4)) {
    case 0: out += " \xF0\x9F\x98\x80"; break;  // U+1F600
    case 1: out += " ##"; break;
    case 2: out += "   "; break;
    default: break;
  }
  return out;
}

class UniqueGuard {
 public:
  // Ensures distinct normalized case-folded content by appending filler.
  std::string admit(std::string description, Rng& rng) {
    while (!seen_.insert(fnv1a64(casefold(normalize_text(description))))
                .second) {
      description += " " + kFiller[rng.bounded(kFiller.size())];
    }
    return description;
  }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

Post base_post(const std::string& id, std::size_t ordinal, Rng& rng) {
  Post p;
  p.post_id = id;
  p.timestamp = kEpochBase + static_cast<std::int64_t>(ordinal) * 97 +
                static_cast<std::int64_t>(rng.bounded(50));
  p.gmt_offset = static_cast<int>(rng.bounded(25)) * 60 - 720;
  p.blogger_id = "b" + std::to_string(rng.bounded(1800));
  p.url = "http://blogs.example/" + id;
  p.type = rng.bounded(5) == 0 ? PostType::quote : PostType::text;
  p.notes = static_cast<std::int64_t>(rng.bounded(400));
  if (rng.bounded(7) == 0) p.reblogged_from = "b" + std::to_string(rng.bounded(1800));
  if (rng.bounded(3) == 0) p.title = "entry " + std::to_string(ordinal);
  return p;
}

void finish_tags(Post& p) { p.num_tags = static_cast<int>(p.tags.size()); }

void add_bloggers(Dataset& dataset, Rng& rng) {
  std::set<std::string> ids;
  for (const auto& p : dataset.posts) ids.insert(p.blogger_id);
  // A few stay unresolved; orphans are part of the contract.
  std::size_t skip = 0;
  for (const auto& id : ids) {
    if (skip++ % 97 == 3) continue;
    Blogger b;
    b.blogger_id = id;
    b.ask = rng.bounded(2) == 0;
    b.ask_anon = rng.bounded(4) == 0;
    b.like_count = static_cast<std::int64_t>(rng.bounded(5000));
    b.post_count = static_cast<std::int64_t>(rng.bounded(900));
    if (rng.bounded(2) == 0) b.title = "blog of " + id;
    dataset.bloggers.emplace(id, std::move(b));
  }
}

std::string english_description(std::size_t target_words, Rng& rng,
                                UniqueGuard& guard) {
  DescriptionBuilder b(rng);
  // Mix filler with mild topical/noise vocabulary for texture. Very short
  // posts stay on function-word-heavy filler so the trigram evidence is
  // unambiguous.
  while (b.size() + 4 < target_words) {
    b.sample(kFiller, std::min<std::size_t>(4, target_words - b.size()));
    if (target_words >= 12 && rng.bounded(3) == 0) {
      const auto& group = noise_groups()[rng.bounded(noise_groups().size())];
      b.sample(group.terms, 1);
    }
  }
  b.sample(kFiller, target_words - b.size());
  return guard.admit(b.assemble(rng), rng);
}

std::string foreign_description(const std::string& lang,
                                std::size_t target_words, Rng& rng,
                                UniqueGuard& guard) {
  DescriptionBuilder b(rng);
  b.sample(pool_for(lang), target_words);
  return guard.admit(b.assemble(rng), rng);
}

}  // namespace

// --- Stats fixture --------------------------------------------------------------

StatsFixture make_stats_fixture(std::uint64_t seed) {
  Rng rng(seed);
  UniqueGuard guard;
  StatsFixture fx;

  // Planted quotas over the 2,682 unique posts.
  const std::array<std::pair<std::string, std::int64_t>, 5> languages = {{
      {"en", 2226}, {"es", 140}, {"fr", 120}, {"de", 86}, {"it", 70}}};
  // No English post goes below 6 words: shorter content is "unknown" by
  // the insufficient-content rule, exactly like the URL-only posts.
  const std::array<std::int64_t, 7> en_buckets = {0, 170, 400, 500,
                                                  686, 467, 3};
  const std::int64_t url_only = 35;
  const std::int64_t too_short = 5;

  std::vector<Post> unique_posts;
  std::size_t ordinal = 0;
  auto next_id = [&] {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%05zu", ++ordinal);
    return std::string(buf);
  };

  // English posts bucket by bucket.
  auto note_language = [&](const Post& p, const std::string& lang) {
    fx.language_by_post.emplace(p.post_id, lang);
  };
  const std::array<std::pair<std::size_t, std::size_t>, 7> word_ranges = {{
      {0, 0}, {6, 9}, {10, 19}, {20, 29}, {30, 90}, {100, 150}, {1005, 1040}}};
  for (std::size_t bucket = 0; bucket < en_buckets.size(); ++bucket) {
    for (std::int64_t i = 0; i < en_buckets[bucket]; ++i) {
      const auto [lo, hi] = word_ranges[bucket];
      const std::size_t words = lo + rng.bounded(hi - lo + 1);
      Post p = base_post(next_id(), ordinal, rng);
      p.description = english_description(words, rng, guard);
      note_language(p, "en");
      unique_posts.push_back(std::move(p));
    }
  }
  // Non-English posts.
  for (const auto& [lang, count] : languages) {
    if (lang == "en") continue;
    for (std::int64_t i = 0; i < count; ++i) {
      Post p = base_post(next_id(), ordinal, rng);
      p.description = foreign_description(lang, 12 + rng.bounded(25), rng,
                                          guard);
      note_language(p, lang);
      unique_posts.push_back(std::move(p));
    }
  }
  // Unknown: URL-only and too-short posts.
  for (std::int64_t i = 0; i < url_only; ++i) {
    Post p = base_post(next_id(), ordinal, rng);
    p.description = "http://share.example/x" + std::to_string(i) + "-" +
                    std::to_string(rng.next() % 1000);
    note_language(p, "unknown");
    unique_posts.push_back(std::move(p));
  }
  const std::array<const char*, 5> shorties = {"ok", "hm", "so so",
                                               "well then", "right then"};
  for (std::int64_t i = 0; i < too_short; ++i) {
    Post p = base_post(next_id(), ordinal, rng);
    p.description = shorties[static_cast<std::size_t>(i) % shorties.size()];
    note_language(p, "unknown");
    unique_posts.push_back(std::move(p));
  }

  // Tags: generic plus a sprinkling of long multi-word tags.
  for (auto& p : unique_posts) {
    const std::size_t n = rng.bounded(5);
    for (std::size_t i = 0; i < n; ++i) {
      p.tags.push_back(kGenericTags[rng.bounded(kGenericTags.size())]);
    }
    if (rng.bounded(50) == 0) {
      DescriptionBuilder b(rng);
      b.sample(kFiller, 5 + rng.bounded(6));
      std::string long_tag = b.assemble(rng);
      long_tag.pop_back();  // no trailing period in a tag
      p.tags.push_back(std::move(long_tag));
    }
    finish_tags(p);
  }

  // Duplicates: 273 jittered copies of distinct unique posts, later
  // timestamps so deduplication keeps the original.
  std::vector<std::size_t> order(unique_posts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<Post> duplicates;
  for (std::size_t i = 0; i < 273; ++i) {
    const Post& original = unique_posts[order[i]];
    Post copy = original;
    copy.post_id = next_id();
    copy.timestamp = original.timestamp + 400000 +
                     static_cast<std::int64_t>(rng.bounded(1000));
    copy.description = jitter_duplicate(original.description, rng);
    copy.reblogged_from = original.blogger_id;
    fx.duplicate_post_ids.push_back(copy.post_id);
    duplicates.push_back(std::move(copy));
  }

  fx.planted_duplicates = duplicates.size();
  for (auto& p : unique_posts) fx.dataset.posts.push_back(std::move(p));
  for (auto& p : duplicates) fx.dataset.posts.push_back(std::move(p));
  rng.shuffle(fx.dataset.posts);
  add_bloggers(fx.dataset, rng);

  for (const auto& [lang, count] : languages) {
    fx.language_counts[lang] = count;
    if (lang == "en") {
      fx.english_posts = count;
    } else {
      fx.non_english_posts += count;
    }
  }
  fx.unknown_posts = url_only + too_short;
  fx.url_only_posts = url_only;
  fx.language_counts["unknown"] = fx.unknown_posts;
  fx.english_word_buckets = en_buckets;
  return fx;
}

// --- Language fixture ----------------------------------------------------------

LanguageFixture make_language_fixture(std::uint64_t seed) {
  Rng rng(seed);
  UniqueGuard guard;
  LanguageFixture fx;

  const std::array<std::pair<std::string, int>, 5> plan = {{
      {"en", 70}, {"es", 10}, {"fr", 8}, {"de", 7}, {"it", 5}}};
  std::size_t ordinal = 0;
  auto add = [&](const std::string& lang, const std::string& description) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "l%03zu", ++ordinal);
    Post p = base_post(buf, ordinal, rng);
    p.description = description;
    finish_tags(p);
    fx.language_by_post.emplace(p.post_id, lang);
    fx.dataset.posts.push_back(std::move(p));
  };

  for (const auto& [lang, count] : plan) {
    for (int i = 0; i < count; ++i) {
      if (lang == "en") {
        add(lang, english_description(14 + rng.bounded(20), rng, guard));
      } else {
        add(lang, foreign_description(lang, 14 + rng.bounded(20), rng, guard));
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    add("unknown", "http://pics.example/v" + std::to_string(1000 + i));
  }
  add("unknown", "hm");
  add("unknown", "so so");

  for (const auto& [id, lang] : fx.language_by_post) {
    if (lang == "en") {
      ++fx.english;
    } else if (lang == "unknown") {
      ++fx.unknown;
    } else {
      ++fx.other;
    }
  }
  add_bloggers(fx.dataset, rng);
  return fx;
}

// --- Cascade fixture --------------------------------------------------------------

CascadeFixture make_cascade_fixture(std::uint64_t seed, std::size_t total) {
  Rng rng(seed);
  UniqueGuard guard;
  CascadeFixture fx;
  fx.seed_tags = kSeedTags;

  fx.intent_posts = total * 22 / 100;
  fx.calm_topic_posts = total * 38 / 100;
  fx.bait_posts = total * 4 / 100;
  fx.noise_posts = total - fx.intent_posts - fx.calm_topic_posts -
                   fx.bait_posts;

  std::size_t ordinal = 0;
  auto next_id = [&] {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c%04zu", ++ordinal);
    return std::string(buf);
  };

  const auto& tones = tone_pools();
  auto tone = [&](const char* name) -> const std::vector<std::string>& {
    return tones.at(name);
  };

  auto add_post = [&](std::string description, bool topic, bool intent,
                      bool seed_tagged) {
    Post p = base_post(next_id(), ordinal, rng);
    p.description = std::move(description);
    if (seed_tagged) {
      p.tags.push_back(kSeedTags[rng.bounded(kSeedTags.size())]);
      if (rng.bounded(2) == 0) {
        p.tags.push_back(kSeedTags[rng.bounded(kSeedTags.size())]);
      }
    }
    const std::size_t generic = 1 + rng.bounded(2);
    for (std::size_t i = 0; i < generic; ++i) {
      p.tags.push_back(kGenericTags[rng.bounded(kGenericTags.size())]);
    }
    finish_tags(p);
    fx.topic_truth.emplace(p.post_id, topic);
    fx.intent_truth.emplace(p.post_id, intent);
    fx.dataset.posts.push_back(std::move(p));
  };

  auto topic_terms = [&](DescriptionBuilder& b, std::size_t k) {
    const auto& group = topic_groups()[rng.bounded(topic_groups().size())];
    b.sample_distinct(group.terms, k);
  };

  for (std::size_t i = 0; i < fx.intent_posts; ++i) {
    DescriptionBuilder b(rng);
    topic_terms(b, 4 + rng.bounded(2));
    b.sample_distinct(tone("anger"), 4 + rng.bounded(3));
    b.sample_distinct(tone("disgust"), 3 + rng.bounded(2));
    b.sample_distinct(tone("confident"), 3 + rng.bounded(2));
    b.sample_distinct(tone("emotional_range"), 3 + rng.bounded(2));
    b.sample_distinct(kNegativeValence, 4 + rng.bounded(2));
    b.sample(kFiller, 5 + rng.bounded(4));
    add_post(guard.admit(b.assemble(rng), rng), true, true, true);
  }

  for (std::size_t i = 0; i < fx.calm_topic_posts; ++i) {
    DescriptionBuilder b(rng);
    // A sparse tail stays under the stage-1 cutoff on purpose.
    const bool sparse = rng.bounded(12) == 0;
    topic_terms(b, sparse ? 1 : 4 + rng.bounded(2));
    b.sample_distinct(tone("joy"), 2 + rng.bounded(2));
    b.sample_distinct(tone("sadness"), 1 + rng.bounded(2));
    b.sample_distinct(tone("analytical"), 3 + rng.bounded(2));
    b.sample_distinct(tone("tentative"), 2 + rng.bounded(2));
    b.sample_distinct(tone("openness"), 2 + rng.bounded(2));
    b.sample_distinct(tone("agreeableness"), 2 + rng.bounded(2));
    b.sample_distinct(kPositiveValence, 3 + rng.bounded(2));
    b.sample(kFiller, 5 + rng.bounded(4));
    add_post(guard.admit(b.assemble(rng), rng), true, false, true);
  }

  for (std::size_t i = 0; i < fx.bait_posts; ++i) {
    // Ground-truth noise wearing topic vocabulary and a hostile tone:
    // stage 1 will pass it, stage 2 should not get credit for it.
    DescriptionBuilder b(rng);
    topic_terms(b, 4 + rng.bounded(2));
    b.sample_distinct(tone("anger"), 4 + rng.bounded(3));
    b.sample_distinct(tone("disgust"), 3 + rng.bounded(2));
    b.sample_distinct(tone("confident"), 3 + rng.bounded(2));
    b.sample_distinct(tone("emotional_range"), 3 + rng.bounded(2));
    b.sample_distinct(kNegativeValence, 4 + rng.bounded(2));
    b.sample(kFiller, 5 + rng.bounded(4));
    add_post(guard.admit(b.assemble(rng), rng), false, false, true);
  }

  for (std::size_t i = 0; i < fx.noise_posts; ++i) {
    DescriptionBuilder b(rng);
    const auto& group = noise_groups()[rng.bounded(noise_groups().size())];
    b.sample_distinct(group.terms, 3 + rng.bounded(3));
    switch (rng.bounded(4)) {
      case 0:
        b.sample_distinct(tone("joy"), 2 + rng.bounded(2));
        b.sample_distinct(tone("extraversion"), 2 + rng.bounded(2));
        break;
      case 1:
        b.sample_distinct(tone("sadness"), 2 + rng.bounded(2));
        b.sample_distinct(tone("tentative"), 1 + rng.bounded(2));
        break;
      case 2:
        b.sample_distinct(tone("conscientiousness"), 2 + rng.bounded(2));
        b.sample_distinct(tone("analytical"), 1 + rng.bounded(2));
        break;
      default:
        b.sample_distinct(tone("fear"), 1 + rng.bounded(2));
        break;
    }
    if (rng.bounded(3) == 0) b.sample_distinct(kPositiveValence, 1 + rng.bounded(2));
    b.sample(kFiller, 8 + rng.bounded(6));
    add_post(guard.admit(b.assemble(rng), rng), false, false, false);
  }

  rng.shuffle(fx.dataset.posts);
  add_bloggers(fx.dataset, rng);
  return fx;
}

// --- Agreement fixture ---------------------------------------------------------------

std::vector<AnnotationRecord> make_agreement_fixture() {
  std::vector<AnnotationRecord> records;
  records.reserve(2 * 2456);
  auto add = [&](std::size_t i, bool topic_a, std::optional<bool> intent_a,
                 bool topic_b, std::optional<bool> intent_b) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "p%05zu", i);
    records.push_back({buf, "a1", topic_a, intent_a});
    records.push_back({buf, "a2", topic_b, intent_b});
  };

  std::size_t i = 0;
  // Both topic: 292 posts whose intent labels break down (103, 2, 12, 175).
  for (int n = 0; n < 103; ++n) add(++i, true, true, true, true);
  for (int n = 0; n < 2; ++n) add(++i, true, true, true, false);
  for (int n = 0; n < 12; ++n) add(++i, true, false, true, true);
  for (int n = 0; n < 175; ++n) add(++i, true, false, true, false);
  // Topic by one annotator only: 24 + 13.
  for (int n = 0; n < 24; ++n) add(++i, true, false, false, std::nullopt);
  for (int n = 0; n < 13; ++n) add(++i, false, std::nullopt, true, false);
  // Both NA: 2127.
  for (int n = 0; n < 2127; ++n) add(++i, false, std::nullopt, false, std::nullopt);
  return records;
}

// --- Manifests -------------------------------------------------------------------------

std::string stats_manifest_json(const StatsFixture& fx,
                                const std::string& config_fingerprint) {
  ordered_json j;
  j["fixture"] = "stats";
  if (!config_fingerprint.empty()) j["config_fingerprint"] = config_fingerprint;
  j["total_posts"] = fx.dataset.posts.size();
  j["planted_duplicates"] = fx.planted_duplicates;
  j["unique_posts"] = fx.dataset.posts.size() - fx.planted_duplicates;
  j["english_posts"] = fx.english_posts;
  j["non_english_posts"] = fx.non_english_posts;
  j["unknown_posts"] = fx.unknown_posts;
  j["url_only_posts"] = fx.url_only_posts;
  ordered_json langs = ordered_json::object();
  for (const auto& [lang, count] : fx.language_counts) langs[lang] = count;
  j["language_counts"] = std::move(langs);
  j["english_word_buckets"] = fx.english_word_buckets;
  ordered_json by_post = ordered_json::object();
  for (const auto& [id, lang] : fx.language_by_post) by_post[id] = lang;
  j["language_by_post"] = std::move(by_post);
  j["duplicate_post_ids"] = fx.duplicate_post_ids;
  return j.dump(2) + "\n";
}

std::string language_manifest_json(const LanguageFixture& fx,
                                   const std::string& config_fingerprint) {
  ordered_json j;
  j["fixture"] = "language";
  if (!config_fingerprint.empty()) j["config_fingerprint"] = config_fingerprint;
  j["total_posts"] = fx.dataset.posts.size();
  j["english"] = fx.english;
  j["other"] = fx.other;
  j["unknown"] = fx.unknown;
  ordered_json by_post = ordered_json::object();
  for (const auto& [id, lang] : fx.language_by_post) by_post[id] = lang;
  j["language_by_post"] = std::move(by_post);
  return j.dump(2) + "\n";
}

std::string cascade_manifest_json(const CascadeFixture& fx,
                                  const std::string& config_fingerprint) {
  ordered_json j;
  j["fixture"] = "cascade";
  if (!config_fingerprint.empty()) j["config_fingerprint"] = config_fingerprint;
  j["total_posts"] = fx.dataset.posts.size();
  j["intent_posts"] = fx.intent_posts;
  j["calm_topic_posts"] = fx.calm_topic_posts;
  j["bait_posts"] = fx.bait_posts;
  j["noise_posts"] = fx.noise_posts;
  j["seed_tags"] = fx.seed_tags;
  ordered_json topic = ordered_json::object();
  for (const auto& [id, v] : fx.topic_truth) topic[id] = v;
  j["topic_truth"] = std::move(topic);
  ordered_json intent = ordered_json::object();
  for (const auto& [id, v] : fx.intent_truth) intent[id] = v;
  j["intent_truth"] = std::move(intent);
  return j.dump(2) + "\n";
}

}  // namespace cascade
