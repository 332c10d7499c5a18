#include "fauxgraph/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fauxgraph/error.hpp"
#include "fauxgraph/text.hpp"

namespace fauxgraph {

ClassProfile default_fauxtography_profile() {
  ClassProfile p;
  p.direct_reply_prob = 0.75;
  p.chain_prob = 0.3;
  p.hub_prob = 0.08;
  p.base_likes = 3.0;
  p.hub_likes = 600.0;
  p.verity_rate = 0.12;
  p.image_rate = 0.10;
  p.negative_rate = 0.14;
  p.positive_rate = 0.03;
  p.url_prob = 0.2;
  p.question_prob = 0.3;
  p.exclamation_prob = 0.35;
  p.mean_delay_seconds = 4.0 * 3600.0;
  return p;
}

ClassProfile default_genuine_profile() {
  ClassProfile p;
  p.direct_reply_prob = 0.35;
  p.chain_prob = 0.7;
  p.hub_prob = 0.01;
  p.base_likes = 15.0;
  p.hub_likes = 80.0;
  p.verity_rate = 0.015;
  p.image_rate = 0.03;
  p.negative_rate = 0.04;
  p.positive_rate = 0.12;
  p.url_prob = 0.04;
  p.question_prob = 0.12;
  p.exclamation_prob = 0.15;
  p.mean_delay_seconds = 8.0 * 3600.0;
  return p;
}

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void validate_profile(const ClassProfile& p, const char* name) {
  const std::string prefix = std::string("synthetic profile '") + name + "': ";
  if (p.min_comments > p.max_comments) throw DataError(prefix + "min_comments exceeds max_comments");
  for (double v : {p.direct_reply_prob, p.chain_prob, p.hub_prob, p.verity_rate, p.image_rate, p.negative_rate,
                   p.positive_rate, p.url_prob, p.question_prob, p.exclamation_prob}) {
    if (!is_probability(v)) throw DataError(prefix + "probabilities must lie in [0, 1]");
  }
  if (p.verity_rate + p.image_rate + p.negative_rate + p.positive_rate > 1.0) {
    throw DataError(prefix + "token pool rates sum above 1");
  }
  if (p.base_likes < 0.0 || p.hub_likes < 0.0 || !(p.mean_delay_seconds > 0.0)) {
    throw DataError(prefix + "endorsement means must be >= 0 and the mean delay > 0");
  }
}

constexpr std::int64_t kMaxDelaySeconds = 5 * 24 * 3600;

const std::vector<std::string> kFiller = {
    "the",   "this",  "is",    "a",     "that",   "i",      "you",   "they",   "was",   "it",
    "people", "city", "day",   "look",  "think",  "like",   "just",  "know",   "time",  "news",
    "today", "yes",   "no",    "here",  "there",  "where",  "when",  "who",    "what",  "how",
    "my",    "your",  "their", "one",   "two",    "year",   "back",  "again",  "still", "seen",
    "went",  "going", "said",  "story", "place",  "street", "night", "morning", "car",  "dog",
    "water", "sky",   "storm", "crowd", "police", "town",   "world", "home",   "work",  "friend",
};

struct TokenPools {
  std::vector<std::string> verity, image, negative, positive;
};

TokenPools make_pools() {
  const auto& lex = Lexicons::defaults();
  TokenPools pools;
  pools.verity.assign(lex.verity_terms.begin(), lex.verity_terms.end());
  pools.image.assign(lex.image_terms.begin(), lex.image_terms.end());
  for (const auto& [token, polarity] : lex.sentiment) {
    (polarity < 0.0 ? pools.negative : pools.positive).push_back(token);
  }
  // Hash-set iteration order is unspecified; sort for reproducible draws.
  for (auto* v : {&pools.verity, &pools.image, &pools.negative, &pools.positive}) std::sort(v->begin(), v->end());
  return pools;
}

template <typename Rng>
const std::string& pick(const std::vector<std::string>& pool, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, pool.size() - 1);
  return pool[d(rng)];
}

/// Per-post jitter so the classes overlap instead of being trivially separable.
ClassProfile jitter(const ClassProfile& base, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> scale(0.6, 1.4);
  std::uniform_real_distribution<double> shift(-0.1, 0.1);
  ClassProfile p = base;
  p.direct_reply_prob = std::clamp(base.direct_reply_prob + shift(rng), 0.0, 1.0);
  p.chain_prob = std::clamp(base.chain_prob + shift(rng), 0.0, 1.0);
  const double s = scale(rng);
  p.verity_rate = base.verity_rate * s;
  p.image_rate = base.image_rate * s;
  p.negative_rate = base.negative_rate * scale(rng);
  p.positive_rate = base.positive_rate * scale(rng);
  const double total = p.verity_rate + p.image_rate + p.negative_rate + p.positive_rate;
  if (total > 1.0) {
    p.verity_rate /= total;
    p.image_rate /= total;
    p.negative_rate /= total;
    p.positive_rate /= total;
  }
  return p;
}

std::string make_text(const ClassProfile& p, const TokenPools& pools, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> length(3, 14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string text;
  const int words = length(rng);
  for (int w = 0; w < words; ++w) {
    const double x = u(rng);
    const std::string* token = nullptr;
    if (x < p.verity_rate) {
      token = &pick(pools.verity, rng);
    } else if (x < p.verity_rate + p.image_rate) {
      token = &pick(pools.image, rng);
    } else if (x < p.verity_rate + p.image_rate + p.negative_rate) {
      token = &pick(pools.negative, rng);
    } else if (x < p.verity_rate + p.image_rate + p.negative_rate + p.positive_rate) {
      token = &pick(pools.positive, rng);
    } else {
      token = &pick(kFiller, rng);
    }
    if (!text.empty()) text += ' ';
    text += *token;
  }
  if (u(rng) < p.question_prob) text += '?';
  if (u(rng) < p.exclamation_prob) text += '!';
  if (u(rng) < p.url_prob) {
    std::uniform_int_distribution<int> id(1000, 9999);
    text += " https://example.org/a/" + std::to_string(id(rng));
  }
  return text;
}

std::int64_t draw_count(double mean, std::mt19937_64& rng) {
  if (mean <= 0.0) return 0;
  std::exponential_distribution<double> d(1.0 / mean);
  return static_cast<std::int64_t>(std::floor(d(rng)));
}

PostRecord make_post(std::size_t index, bool fauxtography, const ClassProfile& base, const TokenPools& pools,
                     std::mt19937_64& rng) {
  const ClassProfile p = jitter(base, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> post_time(1'500'000'000, 1'530'000'000);
  std::uniform_int_distribution<std::size_t> count(p.min_comments, p.max_comments);
  std::uniform_int_distribution<int> author(0, 4999);
  std::exponential_distribution<double> delay(1.0 / p.mean_delay_seconds);

  PostRecord post;
  post.post_id = "syn-" + std::to_string(index);
  post.platform = u(rng) < 0.5 ? Platform::kReddit : Platform::kTwitter;
  post.created_at = post_time(rng);
  post.label = fauxtography;

  const std::size_t n = count(rng);
  std::vector<std::int64_t> delays(n);
  for (auto& d : delays) d = std::min<std::int64_t>(static_cast<std::int64_t>(delay(rng)), kMaxDelaySeconds);
  std::sort(delays.begin(), delays.end());

  post.comments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CommentRecord c;
    c.comment_id = post.post_id + "-c" + std::to_string(i);
    if (i > 0 && u(rng) >= p.direct_reply_prob) {
      if (u(rng) < p.chain_prob) {
        c.parent_id = post.comments[i - 1].comment_id;
      } else {
        std::uniform_int_distribution<std::size_t> earlier(0, i - 1);
        c.parent_id = post.comments[earlier(rng)].comment_id;
      }
    }
    c.author_id = "u" + std::to_string(author(rng));
    c.text = make_text(p, pools, rng);
    const bool hub = u(rng) < p.hub_prob;
    c.likes = draw_count(hub ? p.hub_likes : p.base_likes, rng);
    if (post.platform == Platform::kReddit) {
      c.dislikes = draw_count(1.0 + 0.1 * static_cast<double>(c.likes), rng);
    } else {
      c.retweets = draw_count(0.2 * static_cast<double>(c.likes), rng);
    }
    c.created_at = post.created_at + delays[i];
    post.comments.push_back(std::move(c));
  }
  return post;
}

}  // namespace

void SyntheticConfig::validate() const {
  if (n_posts < 2) throw DataError("synthetic corpus needs n_posts >= 2");
  if (!(class_balance > 0.0 && class_balance < 1.0)) throw DataError("class_balance must lie in (0, 1)");
  validate_profile(fauxtography, "fauxtography");
  validate_profile(genuine, "genuine");
}

std::vector<PostRecord> generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  // The positive count is fixed at round(n * balance) and the labels are
  // shuffled, so every corpus meets its configured balance exactly.
  const auto positives = static_cast<std::size_t>(std::llround(config.class_balance * static_cast<double>(config.n_posts)));
  std::vector<char> labels(config.n_posts, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(positives), 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  const auto pools = make_pools();
  std::vector<PostRecord> posts;
  posts.reserve(config.n_posts);
  for (std::size_t i = 0; i < config.n_posts; ++i) {
    posts.push_back(make_post(i, labels[i] != 0, labels[i] != 0 ? config.fauxtography : config.genuine, pools, rng));
  }
  return posts;
}

double direct_reply_fraction(const PostRecord& post) {
  if (post.comments.empty()) return 0.0;
  const auto direct = std::count_if(post.comments.begin(), post.comments.end(),
                                    [](const CommentRecord& c) { return !c.parent_id.has_value(); });
  return static_cast<double>(direct) / static_cast<double>(post.comments.size());
}

}  // namespace fauxgraph
