#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace cashtag::textprep {

// Result of normalizing one tweet body.  Tokens are lowercase stems drawn
// from the alphabet [a-z0-9]; cashtags keep their uppercase ticker form with
// the marker stripped; hashtags are lowercased with the marker stripped.
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<std::string> cashtags;
  std::vector<std::string> hashtags;
};

using StopwordSet = std::unordered_set<std::string>;

// Ticker grammar: `$` followed by 1 to 10 characters from {A-Z a-z 0-9 .},
// the first of which must be a letter.  Matches are uppercased and returned
// in order of appearance; duplicates are kept.
std::vector<std::string> extract_cashtags(const std::string &body);

// True when the string (without marker) satisfies the ticker grammar above.
bool is_valid_ticker(const std::string &ticker);

// `#` followed by a letter, then letters, digits or underscores; lowercased.
std::vector<std::string> extract_hashtags(const std::string &body);

// The list shipped in data/stopwords_en.txt, compiled in so the library works
// without file access.
const StopwordSet &default_stopwords();

// Loads one lowercase word per line; blank lines and '#' comments ignored.
StopwordSet load_stopwords(const std::string &path);

// Full normalization: tag extraction, lowercasing, URL / emoticon /
// punctuation removal, stopword filtering and stemming.  Stems are carried to
// their fixpoint so that running preprocess on its own joined output
// reproduces the same token list.
TokenStream preprocess(const std::string &body, const StopwordSet &stopwords);
TokenStream preprocess(const std::string &body);

}  // namespace cashtag::textprep
