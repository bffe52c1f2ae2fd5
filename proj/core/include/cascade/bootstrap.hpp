#ifndef CASCADE_BOOTSTRAP_HPP_
#define CASCADE_BOOTSTRAP_HPP_

#include <map>
#include <string>
#include <vector>

#include "cascade/corpus.hpp"

namespace cascade {

// Local stand-in for the remote tag search endpoint: tag -> post ids,
// newest first (timestamp descending, ties by post_id).
struct TagIndex {
  std::map<std::string, std::vector<std::string>> posts_by_tag;

  bool contains(const std::string& tag) const {
    return posts_by_tag.contains(tag);
  }
};

TagIndex build_tag_index(const Dataset& dataset);

struct CrawlTrace {
  std::vector<std::string> seed_tags;
  std::vector<std::string> visited_tags;         // enqueue order, no repeats
  std::vector<std::string> collected_post_ids;   // collection order, no repeats
  std::size_t rounds = 0;
  bool converged = false;
  std::vector<std::string> warnings;  // e.g. seeds absent from the index
};

struct BootstrapResult {
  Dataset dataset;  // collected posts, in collection order
  CrawlTrace trace;
};

// Breadth-first expansion over the tag co-occurrence graph: each dequeued
// tag contributes up to per_tag_limit newest posts, and every new post's
// tags join the frontier if unvisited. Stops at max_posts or when a full
// round adds no new post (converged). Deterministic: FIFO frontier,
// first-seen tag order.
BootstrapResult bootstrap_collect(const Dataset& backing,
                                  const TagIndex& index,
                                  const std::vector<std::string>& seeds,
                                  std::size_t max_posts,
                                  std::size_t per_tag_limit = 20);

std::string crawl_trace_json(const CrawlTrace& trace,
                             const std::string& config_fingerprint);

}  // namespace cascade

#endif  // CASCADE_BOOTSTRAP_HPP_
