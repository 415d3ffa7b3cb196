#include "cashtag/textprep.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cashtag/error.hpp"
#include "cashtag/porter.hpp"

namespace cashtag::textprep {

namespace {

bool is_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ticker_char(char c) { return is_letter(c) || is_digit(c) || c == '.'; }

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

char to_upper(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

constexpr std::size_t kMaxTickerLen = 10;

// Single scan over the body collecting tag matches and their spans, so the
// tokenizer can blank them out and keep tag content away from the tokens.
struct TagSpans {
  std::vector<std::string> cashtags;
  std::vector<std::string> hashtags;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
};

TagSpans scan_tags(const std::string &body) {
  TagSpans out;
  const std::size_t n = body.size();
  for (std::size_t i = 0; i < n; ++i) {
    char marker = body[i];
    if (marker != '$' && marker != '#') continue;
    if (i + 1 >= n || !is_letter(body[i + 1])) continue;
    std::size_t j = i + 1;
    if (marker == '$') {
      while (j < n && is_ticker_char(body[j])) ++j;
      if (j - i - 1 > kMaxTickerLen) {
        // Overlong runs are ordinary text, not a truncated ticker.
        i = j - 1;
        continue;
      }
      std::string tag = body.substr(i + 1, j - i - 1);
      for (char &c : tag) c = to_upper(c);
      out.cashtags.push_back(std::move(tag));
    } else {
      while (j < n && (is_letter(body[j]) || is_digit(body[j]) || body[j] == '_')) ++j;
      std::string tag = body.substr(i + 1, j - i - 1);
      for (char &c : tag) c = to_lower(c);
      out.hashtags.push_back(std::move(tag));
    }
    out.spans.emplace_back(i, j);
    i = j - 1;
  }
  return out;
}

// Whitespace-delimited words removed wholesale before punctuation stripping.
// Emoticons that carry alphanumeric parts would otherwise leave fragments
// like "d" or "3" behind.
const std::unordered_set<std::string> &emoticon_words() {
  static const std::unordered_set<std::string> set = {
      ":)",  ":(",  ":d",  ":p",  ":o",  ":3",  ":/",  ":\\", ":|",
      ";)",  ";(",  ";d",  ";p",  ":-)", ":-(", ":-d", ":-p", ";-)",
      ";-(", "=)",  "=(",  "=d",  "=p",  "(:",  "):",  ":'(", ":')",
      "<3",  "</3", "xd",  "xdd", "^^",  "^_^", "o_o", "-_-", "._.",
  };
  return set;
}

bool is_url_word(const std::string &w) {
  return w.rfind("http://", 0) == 0 || w.rfind("https://", 0) == 0 ||
         w.rfind("www.", 0) == 0;
}

// Stems until the output stops changing.  The classic algorithm is not a
// fixpoint on every word ("agree" -> "agre" -> "agr"), and downstream code
// relies on re-tokenizing stemmed text being a no-op.  Two rounds settle
// everything seen in practice; the cap is a guard.
std::string stem_fixpoint(std::string w) {
  for (int round = 0; round < 8; ++round) {
    std::string next = porter_stem(w);
    if (next == w) break;
    w = std::move(next);
  }
  return w;
}

}  // namespace

std::vector<std::string> extract_cashtags(const std::string &body) {
  return scan_tags(body).cashtags;
}

std::vector<std::string> extract_hashtags(const std::string &body) {
  return scan_tags(body).hashtags;
}

bool is_valid_ticker(const std::string &ticker) {
  if (ticker.empty() || ticker.size() > kMaxTickerLen) return false;
  if (!is_letter(ticker[0])) return false;
  for (char c : ticker)
    if (!is_ticker_char(c)) return false;
  return true;
}

const StopwordSet &default_stopwords() {
  // English stopword list; contraction fragments ("aren", "ve", "ll") appear
  // as separate entries because the tokenizer splits on the apostrophe.
  static const StopwordSet set = {
      "a", "about", "above", "after", "again", "against", "ain", "all", "am",
      "an", "and", "any", "are", "aren", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can",
      "couldn", "d", "did", "didn", "do", "does", "doesn", "doing", "don",
      "down", "during", "each", "few", "for", "from", "further", "had",
      "hadn", "has", "hasn", "have", "haven", "having", "he", "her", "here",
      "hers", "herself", "him", "himself", "his", "how", "i", "if", "in",
      "into", "is", "isn", "it", "its", "itself", "just", "ll", "m", "ma",
      "me", "mightn", "more", "most", "mustn", "my", "myself", "needn", "no",
      "nor", "not", "o", "of", "off", "on", "once", "only", "or", "other",
      "our", "ours", "ourselves", "out", "over", "own", "re", "s", "same",
      "shan", "she", "should", "shouldn", "so", "some", "such", "t", "than",
      "that", "the", "their", "theirs", "them", "themselves", "then", "there",
      "these", "they", "this", "those", "through", "to", "too", "under",
      "until", "up", "ve", "very", "was", "wasn", "we", "were", "weren",
      "what", "when", "where", "which", "while", "who", "whom", "why", "will",
      "with", "won", "wouldn", "y", "you", "your", "yours", "yourself",
      "yourselves",
  };
  return set;
}

StopwordSet load_stopwords(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw make_error("IoError", "cannot open stopword file: " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (char &c : line) c = to_lower(c);
    set.insert(line);
  }
  return set;
}

TokenStream preprocess(const std::string &body, const StopwordSet &stopwords) {
  TokenStream out;
  TagSpans tags = scan_tags(body);
  out.cashtags = std::move(tags.cashtags);
  out.hashtags = std::move(tags.hashtags);

  std::string text = body;
  for (auto [lo, hi] : tags.spans)
    for (std::size_t i = lo; i < hi; ++i) text[i] = ' ';
  for (char &c : text) c = to_lower(c);

  // Word pass: drop URLs and emoticon words while punctuation still marks
  // them out.
  std::string kept;
  kept.reserve(text.size());
  std::istringstream words(text);
  std::string w;
  while (words >> w) {
    if (is_url_word(w) || emoticon_words().count(w)) continue;
    kept += w;
    kept += ' ';
  }

  // Everything outside the token alphabet becomes a separator.
  for (char &c : kept)
    if (!(c >= 'a' && c <= 'z') && !is_digit(c)) c = ' ';

  std::istringstream toks(kept);
  while (toks >> w) {
    if (w.size() < 2 || stopwords.count(w)) continue;
    std::string stem = stem_fixpoint(w);
    if (stem.size() < 2 || stopwords.count(stem)) continue;
    out.tokens.push_back(std::move(stem));
  }
  return out;
}

TokenStream preprocess(const std::string &body) {
  return preprocess(body, default_stopwords());
}

}  // namespace cashtag::textprep
