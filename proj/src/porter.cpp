#include "cashtag/porter.hpp"

#include <cstring>

namespace cashtag {

namespace {

// Working state for one word.  b holds the word, k is the index of its last
// character, j marks the end of the stem once a suffix has been matched.
struct Stem {
  std::string b;
  int k = 0;
  int j = 0;

  bool cons(int i) const {
    switch (b[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Measure of b[0..j]: the number of vowel-consonant sequences in the
  // [C](VC)^m[V] decomposition.
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool doublec(int i) const {
    if (i < 1) return false;
    if (b[i] != b[i - 1]) return false;
    return cons(i);
  }

  // consonant - vowel - consonant ending at i, where the final consonant is
  // not w, x or y.  Restores an e after suffix removal (hop-ing -> hope).
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char ch = b[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(const char *s) {
    int len = static_cast<int>(std::strlen(s));
    if (len > k + 1) return false;
    if (b.compare(k - len + 1, len, s) != 0) return false;
    j = k - len;
    return true;
  }

  void set_to(const char *s) {
    int len = static_cast<int>(std::strlen(s));
    b.replace(j + 1, k - j, s);
    k = j + len;
  }

  void replace_if_measure(const char *s) {
    if (m() > 0) set_to(s);
  }
};

// Step 1: plurals and -ed / -ing.
void step1ab(Stem &z) {
  if (z.b[z.k] == 's') {
    if (z.ends("sses"))
      z.k -= 2;
    else if (z.ends("ies"))
      z.set_to("i");
    else if (z.b[z.k - 1] != 's')
      --z.k;
  }
  if (z.ends("eed")) {
    if (z.m() > 0) --z.k;
  } else if ((z.ends("ed") || z.ends("ing")) && z.vowel_in_stem()) {
    z.k = z.j;
    if (z.ends("at"))
      z.set_to("ate");
    else if (z.ends("bl"))
      z.set_to("ble");
    else if (z.ends("iz"))
      z.set_to("ize");
    else if (z.doublec(z.k)) {
      --z.k;
      char ch = z.b[z.k];
      if (ch == 'l' || ch == 's' || ch == 'z') ++z.k;
    } else if (z.m() == 1 && z.cvc(z.k)) {
      z.j = z.k;
      z.set_to("e");
    }
  }
}

// Step 1c: terminal y to i when the stem contains a vowel.
void step1c(Stem &z) {
  if (z.ends("y") && z.vowel_in_stem()) z.b[z.k] = 'i';
}

// Step 2: double suffixes mapped to single ones, keyed on the penultimate
// letter so at most a handful of comparisons run per word.
void step2(Stem &z) {
  if (z.k == 0) return;
  switch (z.b[z.k - 1]) {
    case 'a':
      if (z.ends("ational")) { z.replace_if_measure("ate"); break; }
      if (z.ends("tional")) { z.replace_if_measure("tion"); break; }
      break;
    case 'c':
      if (z.ends("enci")) { z.replace_if_measure("ence"); break; }
      if (z.ends("anci")) { z.replace_if_measure("ance"); break; }
      break;
    case 'e':
      if (z.ends("izer")) { z.replace_if_measure("ize"); break; }
      break;
    case 'l':
      if (z.ends("abli")) { z.replace_if_measure("able"); break; }
      if (z.ends("alli")) { z.replace_if_measure("al"); break; }
      if (z.ends("entli")) { z.replace_if_measure("ent"); break; }
      if (z.ends("eli")) { z.replace_if_measure("e"); break; }
      if (z.ends("ousli")) { z.replace_if_measure("ous"); break; }
      break;
    case 'o':
      if (z.ends("ization")) { z.replace_if_measure("ize"); break; }
      if (z.ends("ation")) { z.replace_if_measure("ate"); break; }
      if (z.ends("ator")) { z.replace_if_measure("ate"); break; }
      break;
    case 's':
      if (z.ends("alism")) { z.replace_if_measure("al"); break; }
      if (z.ends("iveness")) { z.replace_if_measure("ive"); break; }
      if (z.ends("fulness")) { z.replace_if_measure("ful"); break; }
      if (z.ends("ousness")) { z.replace_if_measure("ous"); break; }
      break;
    case 't':
      if (z.ends("aliti")) { z.replace_if_measure("al"); break; }
      if (z.ends("iviti")) { z.replace_if_measure("ive"); break; }
      if (z.ends("biliti")) { z.replace_if_measure("ble"); break; }
      break;
    default:
      break;
  }
}

// Step 3: -ic-, -full, -ness and friends.
void step3(Stem &z) {
  switch (z.b[z.k]) {
    case 'e':
      if (z.ends("icate")) { z.replace_if_measure("ic"); break; }
      if (z.ends("ative")) { z.replace_if_measure(""); break; }
      if (z.ends("alize")) { z.replace_if_measure("al"); break; }
      break;
    case 'i':
      if (z.ends("iciti")) { z.replace_if_measure("ic"); break; }
      break;
    case 'l':
      if (z.ends("ical")) { z.replace_if_measure("ic"); break; }
      if (z.ends("ful")) { z.replace_if_measure(""); break; }
      break;
    case 's':
      if (z.ends("ness")) { z.replace_if_measure(""); break; }
      break;
    default:
      break;
  }
}

// Step 4: remaining suffixes stripped when the stem measure exceeds 1.
void step4(Stem &z) {
  if (z.k == 0) return;
  switch (z.b[z.k - 1]) {
    case 'a':
      if (z.ends("al")) break;
      return;
    case 'c':
      if (z.ends("ance")) break;
      if (z.ends("ence")) break;
      return;
    case 'e':
      if (z.ends("er")) break;
      return;
    case 'i':
      if (z.ends("ic")) break;
      return;
    case 'l':
      if (z.ends("able")) break;
      if (z.ends("ible")) break;
      return;
    case 'n':
      if (z.ends("ant")) break;
      if (z.ends("ement")) break;
      if (z.ends("ment")) break;
      if (z.ends("ent")) break;
      return;
    case 'o':
      if (z.ends("ion") && z.j >= 0 && (z.b[z.j] == 's' || z.b[z.j] == 't')) break;
      if (z.ends("ou")) break;
      return;
    case 's':
      if (z.ends("ism")) break;
      return;
    case 't':
      if (z.ends("ate")) break;
      if (z.ends("iti")) break;
      return;
    case 'u':
      if (z.ends("ous")) break;
      return;
    case 'v':
      if (z.ends("ive")) break;
      return;
    case 'z':
      if (z.ends("ize")) break;
      return;
    default:
      return;
  }
  if (z.m() > 1) z.k = z.j;
}

// Step 5: tidy up a final -e and -ll.
void step5(Stem &z) {
  z.j = z.k;
  if (z.b[z.k] == 'e') {
    int a = z.m();
    if (a > 1 || (a == 1 && !z.cvc(z.k - 1))) --z.k;
  }
  if (z.b[z.k] == 'l' && z.doublec(z.k) && z.m() > 1) --z.k;
}

}  // namespace

std::string porter_stem(const std::string &word) {
  if (word.size() <= 2) return word;
  Stem z;
  z.b = word;
  z.k = static_cast<int>(word.size()) - 1;
  step1ab(z);
  step1c(z);
  step2(z);
  step3(z);
  step4(z);
  step5(z);
  z.b.resize(z.k + 1);
  return z.b;
}

}  // namespace cashtag
