#include "semnet/steam_client.hpp"

#include <array>
#include <cstdlib>
#include <set>
#include <thread>
#include <utility>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "semnet/error.hpp"

namespace semnet {

using nlohmann::json;

namespace {

constexpr std::string_view kEndpointHost = "https://store.steampowered.com";

struct LanguagePair {
  std::string_view iso;
  std::string_view steam;
};

constexpr std::array<LanguagePair, 20> kLanguages{{
    {"en", "english"},  {"de", "german"},     {"fr", "french"},    {"es", "spanish"},
    {"it", "italian"},  {"pt", "portuguese"}, {"ru", "russian"},   {"pl", "polish"},
    {"nl", "dutch"},    {"sv", "swedish"},    {"da", "danish"},    {"fi", "finnish"},
    {"no", "norwegian"}, {"tr", "turkish"},   {"uk", "ukrainian"}, {"cs", "czech"},
    {"hu", "hungarian"}, {"ja", "japanese"},  {"ko", "koreana"},   {"zh", "schinese"},
}};

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

  HttpResponse get(const std::string& url) override {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);
    auto res = client.Get(path);
    if (!res) return {0, {}, httplib::to_string(res.error())};
    return {res->status, res->body, {}};
  }

 private:
  std::chrono::seconds timeout_;
};

void default_sleep(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

std::string field_path(std::size_t index, const char* key) {
  return "reviews[" + std::to_string(index) + "]." + key;
}

template <typename T>
T review_field(const json& review, std::size_t index, const char* key) {
  auto it = review.find(key);
  if (it == review.end()) throw ParseError(field_path(index, key), "missing");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(field_path(index, key), "unexpected type");
  }
}

}  // namespace

std::unique_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout) {
  return std::make_unique<HttplibTransport>(timeout);
}

RateLimiter::RateLimiter(double requests_per_second, Sleeper sleep, SteadyNow now)
    : rate_(requests_per_second),
      sleep_(sleep ? std::move(sleep) : Sleeper(default_sleep)),
      now_(now ? std::move(now) : SteadyNow([] { return std::chrono::steady_clock::now(); })),
      last_(now_()) {
  if (!(rate_ > 0.0)) throw DataError("rate limit must be positive");
}

void RateLimiter::acquire() {
  auto refill = [this] {
    const auto t = now_();
    const std::chrono::duration<double> elapsed = t - last_;
    last_ = t;
    tokens_ = std::min(1.0, tokens_ + elapsed.count() * rate_);
  };
  refill();
  if (tokens_ < 1.0) {
    const double wait_s = (1.0 - tokens_) / rate_;
    sleep_(std::chrono::milliseconds(static_cast<std::int64_t>(wait_s * 1000.0 + 0.999)));
    refill();
    tokens_ = std::max(tokens_, 1.0);
  }
  tokens_ -= 1.0;
}

double rate_limit_from_env() {
  const char* raw = std::getenv(kRateLimitEnvVar);
  if (raw == nullptr || *raw == '\0') return kDefaultRateLimitRps;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) {
    throw DataError(std::string(kRateLimitEnvVar) + " must be a positive number, got '" + raw + "'");
  }
  return v;
}

std::string url_encode(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size() * 3);
  for (unsigned char c : raw) {
    const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                            c == '-' || c == '_' || c == '.' || c == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

std::string steam_language_name(std::string_view iso_code) {
  for (const auto& [iso, steam] : kLanguages) {
    if (iso == iso_code) return std::string(steam);
  }
  throw DataError("unsupported language code '" + std::string(iso_code) + "'");
}

std::string iso_language_code(std::string_view steam_name) {
  for (const auto& [iso, steam] : kLanguages) {
    if (steam == steam_name) return std::string(iso);
  }
  return {};
}

std::string review_page_url(std::uint32_t app_id, std::string_view cursor, std::string_view iso_language) {
  std::string url(kEndpointHost);
  url += "/appreviews/" + std::to_string(app_id);
  url += "?json=1&num_per_page=100&cursor=" + url_encode(cursor);
  url += "&language=" + steam_language_name(iso_language);
  url += "&filter=recent";
  return url;
}

ReviewPage parse_review_page(std::string_view body, std::uint32_t app_id) {
  ReviewPage page;
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return page;

  json root;
  try {
    root = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError("<body>", e.what());
  }
  if (!root.is_object()) throw ParseError("<body>", "top level is not an object");

  if (auto it = root.find("success"); it != root.end()) {
    if (!it->is_number_integer()) throw ParseError("success", "unexpected type");
    if (it->get<int>() != 1) throw ParseError("success", "endpoint reported failure");
  }
  auto reviews = root.find("reviews");
  if (reviews == root.end() || reviews->is_null()) return page;
  if (!reviews->is_array()) throw ParseError("reviews", "expected an array");

  for (std::size_t i = 0; i < reviews->size(); ++i) {
    const auto& item = (*reviews)[i];
    if (!item.is_object()) throw ParseError("reviews[" + std::to_string(i) + "]", "expected an object");
    RawReview r;
    r.review_id = review_field<std::string>(item, i, "recommendationid");
    if (r.review_id.empty()) throw ParseError(field_path(i, "recommendationid"), "empty");
    r.app_id = app_id;
    r.text = review_field<std::string>(item, i, "review");
    r.created_at = review_field<std::int64_t>(item, i, "timestamp_created");
    r.language = review_field<std::string>(item, i, "language");
    r.votes_up = review_field<std::uint64_t>(item, i, "votes_up");
    page.reviews.push_back(std::move(r));
  }

  if (!page.reviews.empty()) {
    auto cursor = root.find("cursor");
    if (cursor == root.end()) throw ParseError("cursor", "missing");
    if (!cursor->is_string()) throw ParseError("cursor", "unexpected type");
    page.cursor = cursor->get<std::string>();
  }
  return page;
}

std::vector<RawReview> fetch_reviews(HttpTransport& transport, const FetchOptions& options,
                                     RateLimiter& limiter, const Sleeper& sleep) {
  if (options.app_id == 0) throw DataError("app_id must be positive");
  if (options.page_limit < 1) throw DataError("page_limit must be at least 1");
  const std::string steam_lang = steam_language_name(options.language);
  const Sleeper& do_sleep = sleep ? sleep : Sleeper(default_sleep);

  std::vector<RawReview> out;
  std::set<std::string> seen;
  std::string cursor = "*";

  for (int page_no = 0; page_no < options.page_limit; ++page_no) {
    const std::string url = review_page_url(options.app_id, cursor, options.language);
    HttpResponse res;
    auto backoff = options.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      limiter.acquire();
      res = transport.get(url);
      if (res.status != 429) break;
      if (attempt >= options.max_429_retries) {
        throw NetworkError("rate limited (HTTP 429) after " + std::to_string(attempt + 1) + " attempts", cursor);
      }
      do_sleep(backoff);
      backoff *= 2;
    }
    if (res.status == 0) throw NetworkError("transport failure: " + res.error, cursor);
    if (res.status != 200) throw NetworkError("HTTP status " + std::to_string(res.status), cursor);

    auto page = parse_review_page(res.body, options.app_id);
    if (page.reviews.empty()) break;

    for (auto& r : page.reviews) {
      if (r.language != steam_lang) continue;
      if (!options.window.contains(r.created_at)) continue;
      if (!seen.insert(r.review_id).second) continue;
      r.language = options.language;
      out.push_back(std::move(r));
    }
    if (page.cursor == cursor) break;
    cursor = std::move(page.cursor);
  }
  return out;
}

}  // namespace semnet
