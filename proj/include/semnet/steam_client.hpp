#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/corpus.hpp"

namespace semnet {

/// Result of one HTTP GET. status == 0 means the transport itself failed
/// (DNS, TLS, connection reset); `error` then carries the reason.
struct HttpResponse {
  int status = 0;
  std::string body;
  std::string error;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

/// HTTPS transport backed by cpp-httplib.
std::unique_ptr<HttpTransport> make_http_transport(std::chrono::seconds timeout = std::chrono::seconds(30));

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using SteadyNow = std::function<std::chrono::steady_clock::time_point()>;

/// Token bucket holding at most one token, refilled at `rate` per second.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second, Sleeper sleep = {}, SteadyNow now = {});

  /// Blocks (through the sleeper) until a request may be issued.
  void acquire();

  double rate() const noexcept { return rate_; }

 private:
  double rate_;
  double tokens_ = 1.0;
  Sleeper sleep_;
  SteadyNow now_;
  std::chrono::steady_clock::time_point last_;
};

inline constexpr double kDefaultRateLimitRps = 1.0;
inline constexpr const char* kRateLimitEnvVar = "SEMNET_RATE_LIMIT_RPS";

/// Reads SEMNET_RATE_LIMIT_RPS; falls back to 1.0 when unset. A value that is
/// not a positive number throws DataError.
double rate_limit_from_env();

struct FetchOptions {
  std::uint32_t app_id = 0;
  TimeWindow window{0, INT64_MAX};
  std::string language = "en";
  int page_limit = 1;
  int max_429_retries = 5;
  std::chrono::milliseconds initial_backoff{1000};
};

/// Percent-encodes everything except RFC 3986 unreserved characters.
std::string url_encode(std::string_view raw);

/// Steam's name for an ISO 639-1 code ("en" -> "english"). Throws DataError
/// for codes the endpoint does not know.
std::string steam_language_name(std::string_view iso_code);

/// Reverse of steam_language_name; empty when unknown.
std::string iso_language_code(std::string_view steam_name);

std::string review_page_url(std::uint32_t app_id, std::string_view cursor, std::string_view iso_language);

/// One decoded page of the review endpoint.
struct ReviewPage {
  std::vector<RawReview> reviews;
  std::string cursor;
};

/// Decodes an endpoint body. Throws ParseError naming the offending field.
ReviewPage parse_review_page(std::string_view body, std::uint32_t app_id);

/// Walks the cursor pagination of the review endpoint. Yields reviews in API
/// order, keeping those inside the window and in the requested language, and
/// stops after `page_limit` pages, an empty page, or a repeated cursor.
/// A review_id seen on an earlier page is skipped.
///
/// Throws NetworkError (carrying the cursor of the failed page) on transport
/// failure, non-200 status, or when HTTP 429 persists past max_429_retries.
std::vector<RawReview> fetch_reviews(HttpTransport& transport, const FetchOptions& options,
                                     RateLimiter& limiter, const Sleeper& sleep);

}  // namespace semnet
