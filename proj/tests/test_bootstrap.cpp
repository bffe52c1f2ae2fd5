#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>
#include <set>

#include "cascade/bootstrap.hpp"
#include "cascade/fixture.hpp"
#include "cascade/rng.hpp"
#include "cascade/text.hpp"
#include "support/test_util.hpp"

using namespace cascade;

namespace {

Post tagged_post(std::string id, std::vector<std::string> tags,
                 std::int64_t timestamp) {
  Post p = test::make_post(std::move(id), "body of " + id, timestamp);
  p.tags = std::move(tags);
  p.num_tags = static_cast<int>(p.tags.size());
  return p;
}

// Independent reference implementation of the crawl contract: FIFO rounds,
// per-tag newest-first limits, stop on budget or an empty round.
std::set<std::string> oracle_bfs(const Dataset& dataset,
                                 const std::vector<std::string>& seeds,
                                 std::size_t max_posts,
                                 std::size_t per_tag_limit) {
  std::map<std::string, std::vector<const Post*>> by_tag;
  std::map<std::string, const Post*> by_id;
  for (const auto& p : dataset.posts) by_id.emplace(p.post_id, &p);
  for (const auto& p : dataset.posts) {
    std::set<std::string> seen;
    for (const auto& t : p.tags) {
      const std::string folded = casefold(t);
      if (seen.insert(folded).second) by_tag[folded].push_back(&p);
    }
  }
  for (auto& [tag, posts] : by_tag) {
    std::stable_sort(posts.begin(), posts.end(),
                     [](const Post* a, const Post* b) {
                       if (a->timestamp != b->timestamp)
                         return a->timestamp > b->timestamp;
                       return a->post_id < b->post_id;
                     });
  }

  std::set<std::string> collected;
  std::set<std::string> visited;
  std::deque<std::string> frontier;
  for (const auto& s : seeds) {
    const std::string folded = casefold(s);
    if (by_tag.contains(folded) && visited.insert(folded).second) {
      frontier.push_back(folded);
    }
  }
  while (!frontier.empty()) {
    std::size_t additions = 0;
    std::size_t round = frontier.size();
    while (round-- > 0) {
      const std::string tag = frontier.front();
      frontier.pop_front();
      const auto& posts = by_tag.at(tag);
      for (std::size_t i = 0; i < std::min(per_tag_limit, posts.size());
           ++i) {
        if (!collected.insert(posts[i]->post_id).second) continue;
        ++additions;
        for (const auto& t : posts[i]->tags) {
          const std::string folded = casefold(t);
          if (by_tag.contains(folded) && visited.insert(folded).second) {
            frontier.push_back(folded);
          }
        }
        if (collected.size() >= max_posts) return collected;
      }
    }
    if (additions == 0) break;
  }
  return collected;
}

}  // namespace

TEST_CASE("build_tag_index folds case and deduplicates per post") {
  Dataset d;
  d.posts.push_back(tagged_post("p1", {"Alpha", "ALPHA", "alpha"}, 10));
  const auto index = build_tag_index(d);
  REQUIRE(index.posts_by_tag.size() == 1);
  CHECK(index.posts_by_tag.at("alpha") == std::vector<std::string>{"p1"});
}

TEST_CASE("build_tag_index: empty dataset gives empty index") {
  CHECK(build_tag_index(Dataset{}).posts_by_tag.empty());
}

TEST_CASE("build_tag_index orders posts newest-first") {
  Dataset d;
  d.posts.push_back(tagged_post("p1", {"clash"}, 100));
  d.posts.push_back(tagged_post("p2", {"clash"}, 300));
  d.posts.push_back(tagged_post("p3", {"clash"}, 200));
  const auto index = build_tag_index(d);
  CHECK(index.posts_by_tag.at("clash") ==
        std::vector<std::string>{"p2", "p3", "p1"});
}

TEST_CASE("bootstrap_collect: single-tag fixpoint converges in one round") {
  Dataset d;
  d.posts.push_back(tagged_post("p1", {"t"}, 10));
  const auto index = build_tag_index(d);
  const auto result = bootstrap_collect(d, index, {"t"}, 100, 20);
  CHECK(result.trace.collected_post_ids == std::vector<std::string>{"p1"});
  CHECK(result.trace.rounds == 1);
  CHECK(result.trace.converged);
  CHECK(result.dataset.posts.size() == 1);
}

TEST_CASE("bootstrap_collect: two-tag cycle terminates") {
  Dataset d;
  d.posts.push_back(tagged_post("p1", {"t1", "t2"}, 10));
  d.posts.push_back(tagged_post("p2", {"t2", "t1"}, 20));
  const auto index = build_tag_index(d);
  const auto result = bootstrap_collect(d, index, {"t1"}, 100, 20);
  CHECK(result.trace.converged);
  CHECK(result.trace.visited_tags == std::vector<std::string>{"t1", "t2"});
  std::set<std::string> ids(result.trace.collected_post_ids.begin(),
                            result.trace.collected_post_ids.end());
  CHECK(ids == std::set<std::string>{"p1", "p2"});
}

TEST_CASE("bootstrap_collect: missing seed is a warning, not fatal") {
  Dataset d;
  d.posts.push_back(tagged_post("p1", {"real"}, 10));
  const auto index = build_tag_index(d);
  const auto result = bootstrap_collect(d, index, {"ghost", "real"}, 100, 20);
  REQUIRE(result.trace.warnings.size() == 1);
  CHECK(result.trace.warnings[0] == "seed tag not in index: ghost");
  CHECK(result.trace.collected_post_ids == std::vector<std::string>{"p1"});
}

TEST_CASE("bootstrap_collect validates inputs") {
  Dataset d;
  const auto index = build_tag_index(d);
  CHECK_THROWS_AS(bootstrap_collect(d, index, {}, 10, 20),
                  std::invalid_argument);
  CHECK_THROWS_AS(bootstrap_collect(d, index, {"t"}, 0, 20),
                  std::invalid_argument);
  CHECK_THROWS_AS(bootstrap_collect(d, index, {"t"}, 10, 0),
                  std::invalid_argument);
}

TEST_CASE("bootstrap_collect respects the post budget") {
  Dataset d;
  for (int i = 0; i < 30; ++i) {
    d.posts.push_back(tagged_post("p" + std::to_string(i), {"hub"}, i));
  }
  const auto index = build_tag_index(d);
  const auto result = bootstrap_collect(d, index, {"hub"}, 7, 50);
  CHECK(result.trace.collected_post_ids.size() == 7);
  CHECK_FALSE(result.trace.converged);
}

TEST_CASE("bootstrap_collect honors the per-tag page limit") {
  Dataset d;
  for (int i = 0; i < 10; ++i) {
    d.posts.push_back(tagged_post("p" + std::to_string(i), {"hub"}, i));
  }
  const auto index = build_tag_index(d);
  const auto result = bootstrap_collect(d, index, {"hub"}, 100, 4);
  // Four newest posts: timestamps 9, 8, 7, 6.
  CHECK(result.trace.collected_post_ids ==
        std::vector<std::string>{"p9", "p8", "p7", "p6"});
  CHECK(result.trace.converged);
}

TEST_CASE("bootstrap_collect matches the oracle on the cascade fixture") {
  const auto fx = make_cascade_fixture(2024);
  const auto index = build_tag_index(fx.dataset);
  const auto result =
      bootstrap_collect(fx.dataset, index, fx.seed_tags, 400, 20);
  const auto expected = oracle_bfs(fx.dataset, fx.seed_tags, 400, 20);
  std::set<std::string> got(result.trace.collected_post_ids.begin(),
                            result.trace.collected_post_ids.end());
  CHECK(got == expected);
  CHECK(got.size() == result.trace.collected_post_ids.size());
}

TEST_CASE("bootstrap_collect is deterministic and stays within the corpus") {
  Rng rng(555);
  for (int trial = 0; trial < 15; ++trial) {
    Dataset d;
    const std::size_t n = 5 + rng.bounded(40);
    std::vector<std::string> tag_pool;
    for (int t = 0; t < 8; ++t) tag_pool.push_back("t" + std::to_string(t));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::string> tags;
      const std::size_t k = rng.bounded(4);
      for (std::size_t j = 0; j < k; ++j) {
        tags.push_back(tag_pool[rng.bounded(tag_pool.size())]);
      }
      d.posts.push_back(tagged_post("p" + std::to_string(i), tags,
                                    static_cast<std::int64_t>(rng.bounded(1000))));
    }
    const auto index = build_tag_index(d);
    const std::vector<std::string> seeds = {"t0", "t3", "missing"};
    const auto a = bootstrap_collect(d, index, seeds, 25, 3);
    const auto b = bootstrap_collect(d, index, seeds, 25, 3);
    CHECK(a.trace.collected_post_ids == b.trace.collected_post_ids);
    CHECK(a.trace.visited_tags == b.trace.visited_tags);
    CHECK(a.trace.rounds == b.trace.rounds);
    CHECK(a.trace.converged == b.trace.converged);

    // Collected posts come from the backing corpus; visited tags cover
    // every seed present in the index.
    for (const auto& id : a.trace.collected_post_ids) {
      CHECK(d.find_post(id) != nullptr);
    }
    for (const auto& s : seeds) {
      if (index.contains(s)) {
        CHECK(std::find(a.trace.visited_tags.begin(),
                        a.trace.visited_tags.end(),
                        s) != a.trace.visited_tags.end());
      }
    }
    // No repeats in the trace.
    std::set<std::string> unique_ids(a.trace.collected_post_ids.begin(),
                                     a.trace.collected_post_ids.end());
    CHECK(unique_ids.size() == a.trace.collected_post_ids.size());
    std::set<std::string> unique_tags(a.trace.visited_tags.begin(),
                                      a.trace.visited_tags.end());
    CHECK(unique_tags.size() == a.trace.visited_tags.size());
  }
}

TEST_CASE("crawl trace serializes with the config fingerprint") {
  Dataset d;
  d.posts.push_back(tagged_post("p1", {"t"}, 10));
  const auto index = build_tag_index(d);
  const auto result = bootstrap_collect(d, index, {"t"}, 10, 20);
  const auto json = crawl_trace_json(result.trace, "deadbeef00000000");
  CHECK(json.find("deadbeef00000000") != std::string::npos);
  CHECK(json.find("\"converged\": true") != std::string::npos);
}
