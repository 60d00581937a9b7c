#include <doctest.h>

#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "semnet/error.hpp"
#include "semnet/steam_client.hpp"

using namespace semnet;
using nlohmann::json;

namespace {

class ScriptedTransport : public HttpTransport {
 public:
  std::deque<HttpResponse> responses;
  std::vector<std::string> urls;

  HttpResponse get(const std::string& url) override {
    urls.push_back(url);
    if (responses.empty()) return {200, R"({"success":1,"reviews":[],"cursor":"end"})", {}};
    auto r = responses.front();
    responses.pop_front();
    return r;
  }
};

struct FakeClock {
  std::chrono::steady_clock::time_point now{};
  std::vector<std::chrono::milliseconds> sleeps;

  Sleeper sleeper() {
    return [this](std::chrono::milliseconds d) {
      sleeps.push_back(d);
      now += d;
    };
  }
  SteadyNow clock() {
    return [this] { return now; };
  }
};

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SEMNET_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Same shape as the recorded fixture, with synthetic ids and timestamps.
json review_json(const std::string& id, std::int64_t ts, const std::string& lang = "english") {
  return {{"recommendationid", id},
          {"author", {{"steamid", "7656119800000" + id}, {"playtime_forever", 10}}},
          {"language", lang},
          {"review", "review text " + id},
          {"timestamp_created", ts},
          {"timestamp_updated", ts},
          {"voted_up", true},
          {"votes_up", 1},
          {"votes_funny", 0},
          {"weighted_vote_score", "0.5"}};
}

std::string page_body(const std::vector<json>& reviews, const std::string& cursor) {
  return json{{"success", 1}, {"query_summary", {{"num_reviews", reviews.size()}}}, {"reviews", reviews}, {"cursor", cursor}}
      .dump();
}

FetchOptions options(int pages) {
  FetchOptions o;
  o.app_id = 1;
  o.window = {1000, 2000};
  o.page_limit = pages;
  o.initial_backoff = std::chrono::milliseconds(10);
  return o;
}

}  // namespace

TEST_CASE("parse_review_page reads the recorded endpoint shape") {
  const auto page = parse_review_page(read_fixture("steam_page_sample.json"), 1127400);
  REQUIRE(page.reviews.size() == 3);
  CHECK(page.cursor == "AoJwq+7Bx/QCe7WOpAU=");
  CHECK(page.reviews[0].review_id == "151234567");
  CHECK(page.reviews[0].app_id == 1127400);
  CHECK(page.reviews[0].created_at == 1700000000);
  CHECK(page.reviews[0].votes_up == 42);
  CHECK(page.reviews[1].text.find("runt died") != std::string::npos);
  CHECK(page.reviews[2].language == "german");
}

TEST_CASE("parse_review_page names the offending field") {
  auto body = json::parse(read_fixture("steam_page_sample.json"));
  body["reviews"][1].erase("timestamp_created");
  try {
    parse_review_page(body.dump(), 1);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "reviews[1].timestamp_created");
  }
  body = json::parse(read_fixture("steam_page_sample.json"));
  body["reviews"][0]["votes_up"] = "many";
  CHECK_THROWS_WITH_AS(parse_review_page(body.dump(), 1), doctest::Contains("reviews[0].votes_up"), ParseError);
  CHECK_THROWS_AS(parse_review_page("{not json", 1), ParseError);
  CHECK_THROWS_AS(parse_review_page(R"({"success":2})", 1), ParseError);
  CHECK_THROWS_WITH_AS(parse_review_page(R"({"success":1,"reviews":[{"recommendationid":"1","review":"x","timestamp_created":1,"language":"english","votes_up":0}]})", 1),
                       doctest::Contains("cursor"), ParseError);
}

TEST_CASE("url_encode leaves only unreserved characters") {
  CHECK(url_encode("*") == "%2A");
  CHECK(url_encode("AoJwq+7Bx/QCe7WOpAU=") == "AoJwq%2B7Bx%2FQCe7WOpAU%3D");
  CHECK(url_encode("a-b_c.d~") == "a-b_c.d~");
}

TEST_CASE("review_page_url follows the endpoint contract") {
  CHECK(review_page_url(1127400, "AoJ+x=", "en") ==
        "https://store.steampowered.com/appreviews/1127400?json=1&num_per_page=100&cursor=AoJ%2Bx%3D&language=english&filter=recent");
  CHECK_THROWS_AS(review_page_url(1, "*", "xx"), DataError);
}

TEST_CASE("fetch_reviews: empty response yields an empty sequence") {
  ScriptedTransport t;
  t.responses.push_back({200, "", {}});
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
  CHECK(fetch_reviews(t, options(5), limiter, clock.sleeper()).empty());
  CHECK(t.urls.size() == 1);

  ScriptedTransport t2;
  t2.responses.push_back({200, R"({"success":1,"query_summary":{"num_reviews":0},"reviews":[],"cursor":"*"})", {}});
  CHECK(fetch_reviews(t2, options(5), limiter, clock.sleeper()).empty());
}

TEST_CASE("fetch_reviews: two pages of 100 and 37 reviews arrive in order") {
  std::vector<json> page1;
  std::vector<json> page2;
  for (int i = 0; i < 100; ++i) page1.push_back(review_json("p1-" + std::to_string(i), 1000 + i));
  for (int i = 0; i < 37; ++i) page2.push_back(review_json("p2-" + std::to_string(i), 1500 + i));

  ScriptedTransport t;
  t.responses.push_back({200, page_body(page1, "c+1"), {}});
  t.responses.push_back({200, page_body(page2, "c/2"), {}});
  t.responses.push_back({200, page_body({}, "c/2"), {}});
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
  const auto got = fetch_reviews(t, options(10), limiter, clock.sleeper());
  REQUIRE(got.size() == 137);
  CHECK(got.front().review_id == "p1-0");
  CHECK(got[99].review_id == "p1-99");
  CHECK(got[100].review_id == "p2-0");
  CHECK(got.back().review_id == "p2-36");
  CHECK(got.front().language == "en");
  // Cursor is passed URL-encoded from the previous response.
  REQUIRE(t.urls.size() == 3);
  CHECK(t.urls[0].find("cursor=%2A&") != std::string::npos);
  CHECK(t.urls[1].find("cursor=c%2B1&") != std::string::npos);
  CHECK(t.urls[2].find("cursor=c%2F2&") != std::string::npos);
}

TEST_CASE("fetch_reviews drops reviews outside the window or language") {
  ScriptedTransport t;
  t.responses.push_back({200,
                         page_body({review_json("in", 1500), review_json("late", 2001), review_json("early", 999),
                                    review_json("de", 1500, "german"), review_json("edge", 2000)},
                                   "next"),
                         {}});
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
  const auto got = fetch_reviews(t, options(1), limiter, clock.sleeper());
  REQUIRE(got.size() == 2);
  CHECK(got[0].review_id == "in");
  CHECK(got[1].review_id == "edge");
}

TEST_CASE("fetch_reviews stops at page_limit and on a repeated cursor") {
  ScriptedTransport t;
  for (int p = 0; p < 5; ++p) {
    t.responses.push_back({200, page_body({review_json("r" + std::to_string(p), 1500)}, "c" + std::to_string(p)), {}});
  }
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
  CHECK(fetch_reviews(t, options(3), limiter, clock.sleeper()).size() == 3);
  CHECK(t.urls.size() == 3);

  ScriptedTransport same;
  same.responses.push_back({200, page_body({review_json("x", 1500)}, "*"), {}});
  same.responses.push_back({200, page_body({review_json("y", 1500)}, "*"), {}});
  CHECK(fetch_reviews(same, options(10), limiter, clock.sleeper()).size() == 1);
  CHECK(same.urls.size() == 1);
}

TEST_CASE("fetch_reviews count equals a brute-force filter of the raw pages") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int pages = 1 + static_cast<int>(rng() % 5);
    const int page_limit = 1 + static_cast<int>(rng() % 6);
    ScriptedTransport t;
    std::size_t expected = 0;
    int id = 0;
    for (int p = 0; p < pages; ++p) {
      std::vector<json> items;
      const int n = 1 + static_cast<int>(rng() % 20);
      for (int i = 0; i < n; ++i) {
        const std::int64_t ts = 500 + static_cast<std::int64_t>(rng() % 2000);
        const bool english = rng() % 4 != 0;
        items.push_back(review_json(std::to_string(id++), ts, english ? "english" : "french"));
        if (p < page_limit && english && ts >= 1000 && ts <= 2000) ++expected;
      }
      t.responses.push_back({200, page_body(items, "cursor" + std::to_string(p)), {}});
    }
    FakeClock clock;
    RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
    CHECK(fetch_reviews(t, options(page_limit), limiter, clock.sleeper()).size() == expected);
  }
}

TEST_CASE("fetch_reviews skips review ids already seen") {
  ScriptedTransport t;
  t.responses.push_back({200, page_body({review_json("a", 1500), review_json("b", 1500)}, "c1"), {}});
  t.responses.push_back({200, page_body({review_json("b", 1500), review_json("c", 1500)}, "c2"), {}});
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
  const auto got = fetch_reviews(t, options(2), limiter, clock.sleeper());
  REQUIRE(got.size() == 3);
  CHECK(got[2].review_id == "c");
}

TEST_CASE("fetch_reviews backs off on HTTP 429 and gives up after the cap") {
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());

  ScriptedTransport recovers;
  recovers.responses.push_back({429, "", {}});
  recovers.responses.push_back({429, "", {}});
  recovers.responses.push_back({200, page_body({review_json("a", 1500)}, "c1"), {}});
  auto opts = options(1);
  opts.max_429_retries = 3;
  std::vector<std::chrono::milliseconds> backoffs;
  Sleeper record = [&](std::chrono::milliseconds d) { backoffs.push_back(d); };
  CHECK(fetch_reviews(recovers, opts, limiter, record).size() == 1);
  REQUIRE(backoffs.size() == 2);
  CHECK(backoffs[0] == std::chrono::milliseconds(10));
  CHECK(backoffs[1] == std::chrono::milliseconds(20));

  ScriptedTransport stuck;
  stuck.responses.push_back({200, page_body({review_json("a", 1500)}, "next+page"), {}});
  for (int i = 0; i < 10; ++i) stuck.responses.push_back({429, "", {}});
  opts = options(5);
  opts.max_429_retries = 2;
  try {
    fetch_reviews(stuck, opts, limiter, record);
    FAIL("expected NetworkError");
  } catch (const NetworkError& e) {
    CHECK(e.retriable());
    CHECK(e.cursor() == "next+page");
  }
  CHECK(stuck.urls.size() == 4);  // first page + 3 attempts at the second
}

TEST_CASE("fetch_reviews keeps the cursor on transport failures") {
  FakeClock clock;
  RateLimiter limiter(1000.0, clock.sleeper(), clock.clock());
  ScriptedTransport t;
  t.responses.push_back({200, page_body({review_json("a", 1500)}, "resume-here"), {}});
  t.responses.push_back({0, "", "connection reset"});
  try {
    fetch_reviews(t, options(5), limiter, clock.sleeper());
    FAIL("expected NetworkError");
  } catch (const NetworkError& e) {
    CHECK(e.cursor() == "resume-here");
    CHECK(std::string(e.what()).find("connection reset") != std::string::npos);
  }
  ScriptedTransport server_error;
  server_error.responses.push_back({503, "", {}});
  CHECK_THROWS_AS(fetch_reviews(server_error, options(1), limiter, clock.sleeper()), NetworkError);
}

TEST_CASE("fetch_reviews validates its preconditions") {
  FakeClock clock;
  RateLimiter limiter(1.0, clock.sleeper(), clock.clock());
  ScriptedTransport t;
  auto o = options(1);
  o.app_id = 0;
  CHECK_THROWS_AS(fetch_reviews(t, o, limiter, clock.sleeper()), DataError);
  o = options(0);
  CHECK_THROWS_AS(fetch_reviews(t, o, limiter, clock.sleeper()), DataError);
}

TEST_CASE("RateLimiter spaces requests at the configured rate") {
  FakeClock clock;
  RateLimiter limiter(2.0, clock.sleeper(), clock.clock());
  limiter.acquire();  // initial token
  CHECK(clock.sleeps.empty());
  limiter.acquire();
  limiter.acquire();
  REQUIRE(clock.sleeps.size() == 2);
  CHECK(clock.sleeps[0] == std::chrono::milliseconds(500));
  CHECK(clock.sleeps[1] == std::chrono::milliseconds(500));
  clock.now += std::chrono::seconds(10);  // idle time does not bank more than one token
  limiter.acquire();
  limiter.acquire();
  CHECK(clock.sleeps.size() == 3);
  CHECK_THROWS_AS(RateLimiter(0.0), DataError);
}

TEST_CASE("rate_limit_from_env reads SEMNET_RATE_LIMIT_RPS") {
  ::unsetenv(kRateLimitEnvVar);
  CHECK(rate_limit_from_env() == doctest::Approx(1.0));
  ::setenv(kRateLimitEnvVar, "2.5", 1);
  CHECK(rate_limit_from_env() == doctest::Approx(2.5));
  ::setenv(kRateLimitEnvVar, "fast", 1);
  CHECK_THROWS_AS(rate_limit_from_env(), DataError);
  ::setenv(kRateLimitEnvVar, "-1", 1);
  CHECK_THROWS_AS(rate_limit_from_env(), DataError);
  ::unsetenv(kRateLimitEnvVar);
}

TEST_CASE("language codes map to endpoint names and back") {
  CHECK(steam_language_name("en") == "english");
  CHECK(steam_language_name("zh") == "schinese");
  CHECK(iso_language_code("german") == "de");
  CHECK(iso_language_code("klingon").empty());
}
