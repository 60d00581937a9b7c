#pragma once

#include <string_view>

// Contents of the files under data/, compiled in at build time.
namespace semnet::default_data {

extern const std::string_view kStandardStoplist;
extern const std::string_view kTechnicalStoplist;
extern const std::string_view kConflationLexicon;
extern const std::string_view kSentimentLexicon;
extern const std::string_view kIdentitySets;

}  // namespace semnet::default_data
