#include "cascade/bootstrap.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cascade/text.hpp"
#include "json.hpp"

namespace cascade {

namespace {

std::string fold_tag(std::string_view tag) {
  std::string folded = casefold(tag);
  const auto first = folded.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = folded.find_last_not_of(" \t\r\n");
  return folded.substr(first, last - first + 1);
}

}  // namespace

TagIndex build_tag_index(const Dataset& dataset) {
  TagIndex index;
  std::unordered_map<std::string, const Post*> by_id;
  for (const auto& p : dataset.posts) by_id.emplace(p.post_id, &p);

  for (const auto& p : dataset.posts) {
    std::unordered_set<std::string> seen;  // [a, A] collapses to one entry
    for (const auto& tag : p.tags) {
      std::string folded = fold_tag(tag);
      if (folded.empty() || !seen.insert(folded).second) continue;
      index.posts_by_tag[std::move(folded)].push_back(p.post_id);
    }
  }
  for (auto& [tag, ids] : index.posts_by_tag) {
    std::sort(ids.begin(), ids.end(), [&](const auto& a, const auto& b) {
      const Post* pa = by_id.at(a);
      const Post* pb = by_id.at(b);
      if (pa->timestamp != pb->timestamp) return pa->timestamp > pb->timestamp;
      return pa->post_id < pb->post_id;
    });
  }
  return index;
}

BootstrapResult bootstrap_collect(const Dataset& backing,
                                  const TagIndex& index,
                                  const std::vector<std::string>& seeds,
                                  std::size_t max_posts,
                                  std::size_t per_tag_limit) {
  if (seeds.empty()) throw std::invalid_argument("bootstrap: seeds are empty");
  if (max_posts == 0 || per_tag_limit == 0)
    throw std::invalid_argument("bootstrap: limits must be positive");

  std::unordered_map<std::string, const Post*> by_id;
  for (const auto& p : backing.posts) by_id.emplace(p.post_id, &p);

  BootstrapResult result;
  CrawlTrace& trace = result.trace;
  std::deque<std::string> frontier;
  std::unordered_set<std::string> visited;
  std::unordered_set<std::string> collected;

  auto visit = [&](const std::string& tag) {
    if (visited.insert(tag).second) {
      trace.visited_tags.push_back(tag);
      frontier.push_back(tag);
    }
  };

  for (const auto& seed : seeds) {
    const std::string folded = fold_tag(seed);
    trace.seed_tags.push_back(folded);
    if (!index.contains(folded)) {
      trace.warnings.push_back("seed tag not in index: " + folded);
      continue;
    }
    visit(folded);
  }

  bool budget_hit = false;
  while (!frontier.empty() && !budget_hit) {
    ++trace.rounds;
    std::size_t round_additions = 0;
    std::size_t round_size = frontier.size();
    while (round_size-- > 0 && !budget_hit) {
      const std::string tag = std::move(frontier.front());
      frontier.pop_front();
      const auto it = index.posts_by_tag.find(tag);
      if (it == index.posts_by_tag.end()) continue;
      const auto& ids = it->second;
      const std::size_t take = std::min(per_tag_limit, ids.size());
      for (std::size_t i = 0; i < take; ++i) {
        const std::string& post_id = ids[i];
        if (!collected.insert(post_id).second) continue;
        trace.collected_post_ids.push_back(post_id);
        ++round_additions;
        const Post* post = by_id.at(post_id);
        for (const auto& t : post->tags) {
          const std::string folded = fold_tag(t);
          if (!folded.empty() && index.contains(folded)) visit(folded);
        }
        if (collected.size() >= max_posts) {
          budget_hit = true;
          break;
        }
      }
    }
    if (!budget_hit && round_additions == 0) {
      trace.converged = true;
      break;
    }
  }
  // An exhausted frontier means the next round could not add anything.
  if (!budget_hit && frontier.empty()) trace.converged = true;

  result.dataset.posts.reserve(trace.collected_post_ids.size());
  for (const auto& id : trace.collected_post_ids) {
    const Post* post = by_id.at(id);
    result.dataset.posts.push_back(*post);
    const auto b = backing.bloggers.find(post->blogger_id);
    if (b != backing.bloggers.end()) result.dataset.bloggers.insert(*b);
  }
  return result;
}

std::string crawl_trace_json(const CrawlTrace& trace,
                             const std::string& config_fingerprint) {
  nlohmann::ordered_json j;
  j["config_fingerprint"] = config_fingerprint;
  j["seeds"] = trace.seed_tags;
  j["visited_tags"] = trace.visited_tags;
  j["collected_post_ids"] = trace.collected_post_ids;
  j["rounds"] = trace.rounds;
  j["converged"] = trace.converged;
  j["warnings"] = trace.warnings;
  return j.dump(2) + "\n";
}

}  // namespace cascade
