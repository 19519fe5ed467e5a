#include "microrep/porter.hpp"

#include <cstring>

namespace microrep {

// Direct port of the original 1980 algorithm. The buffer holds the word
// being stemmed; `k` is the index of its last letter and `j` marks the end
// of the candidate stem set by the most recent ends() call (may be -1 when
// a suffix spans the whole word). Uses the original published rule list
// (ABLI -> ABLE, no LOGI rule).
namespace {

class Stemmer {
public:
    explicit Stemmer(const std::string& word)
        : b_(word), k_(static_cast<int>(word.size()) - 1), j_(0) {}

    std::string run() {
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b_.substr(0, static_cast<size_t>(k_) + 1);
    }

private:
    std::string b_;
    int k_, j_;

    bool cons(int i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !cons(i - 1);
            default:
                return true;
        }
    }

    // Measure of b[0..j]: the m in [C](VC)^m[V].
    int measure() const {
        int n = 0, i = 0;
        while (true) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(int i) const {
        if (i < 1) return false;
        return b_[i] == b_[i - 1] && cons(i);
    }

    // cvc(i) holds when b[i-2..i] is consonant-vowel-consonant and the final
    // consonant is not w, x or y; restores a final e after -ed/-ing removal.
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        const char ch = b_[i];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(const char* s) {
        const int len = static_cast<int>(std::strlen(s));
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<size_t>(k_ + 1 - len), static_cast<size_t>(len), s) != 0)
            return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(const char* s) {
        const int len = static_cast<int>(std::strlen(s));
        b_.replace(static_cast<size_t>(j_ + 1), b_.size() - static_cast<size_t>(j_ + 1), s);
        k_ = j_ + len;
    }

    void replace_if_m(const char* s) {
        if (measure() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_] == 's') {
            if (ends("sses")) k_ -= 2;
            else if (ends("ies")) set_to("i");
            else if (k_ >= 1 && b_[k_ - 1] != 's') --k_;
        }
        if (ends("eed")) {
            if (measure() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_cons(k_)) {
                --k_;
                const char ch = b_[k_];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (measure() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
    }

    void step2() {
        if (k_ < 1) return;
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("ational")) { replace_if_m("ate"); return; }
                if (ends("tional")) { replace_if_m("tion"); return; }
                return;
            case 'c':
                if (ends("enci")) { replace_if_m("ence"); return; }
                if (ends("anci")) { replace_if_m("ance"); return; }
                return;
            case 'e':
                if (ends("izer")) { replace_if_m("ize"); return; }
                return;
            case 'l':
                if (ends("abli")) { replace_if_m("able"); return; }
                if (ends("alli")) { replace_if_m("al"); return; }
                if (ends("entli")) { replace_if_m("ent"); return; }
                if (ends("eli")) { replace_if_m("e"); return; }
                if (ends("ousli")) { replace_if_m("ous"); return; }
                return;
            case 'o':
                if (ends("ization")) { replace_if_m("ize"); return; }
                if (ends("ation")) { replace_if_m("ate"); return; }
                if (ends("ator")) { replace_if_m("ate"); return; }
                return;
            case 's':
                if (ends("alism")) { replace_if_m("al"); return; }
                if (ends("iveness")) { replace_if_m("ive"); return; }
                if (ends("fulness")) { replace_if_m("ful"); return; }
                if (ends("ousness")) { replace_if_m("ous"); return; }
                return;
            case 't':
                if (ends("aliti")) { replace_if_m("al"); return; }
                if (ends("iviti")) { replace_if_m("ive"); return; }
                if (ends("biliti")) { replace_if_m("ble"); return; }
                return;
            default:
                return;
        }
    }

    void step3() {
        switch (b_[k_]) {
            case 'e':
                if (ends("icate")) { replace_if_m("ic"); return; }
                if (ends("ative")) { replace_if_m(""); return; }
                if (ends("alize")) { replace_if_m("al"); return; }
                return;
            case 'i':
                if (ends("iciti")) { replace_if_m("ic"); return; }
                return;
            case 'l':
                if (ends("ical")) { replace_if_m("ic"); return; }
                if (ends("ful")) { replace_if_m(""); return; }
                return;
            case 's':
                if (ends("ness")) { replace_if_m(""); return; }
                return;
            default:
                return;
        }
    }

    void step4() {
        if (k_ < 1) return;
        bool matched = false;
        switch (b_[k_ - 1]) {
            case 'a': matched = ends("al"); break;
            case 'c': matched = ends("ance") || ends("ence"); break;
            case 'e': matched = ends("er"); break;
            case 'i': matched = ends("ic"); break;
            case 'l': matched = ends("able") || ends("ible"); break;
            case 'n': matched = ends("ant") || ends("ement") || ends("ment") || ends("ent"); break;
            case 'o':
                // ION is removed only when the remaining stem ends in s or t.
                matched = (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) ||
                          ends("ou");
                break;
            case 's': matched = ends("ism"); break;
            case 't': matched = ends("ate") || ends("iti"); break;
            case 'u': matched = ends("ous"); break;
            case 'v': matched = ends("ive"); break;
            case 'z': matched = ends("ize"); break;
            default: return;
        }
        if (matched && measure() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[k_] == 'e') {
            const int m = measure();
            if (m > 1 || (m == 1 && !cvc(k_ - 1))) --k_;
        }
        if (b_[k_] == 'l' && double_cons(k_) && measure() > 1) --k_;
    }
};

} // namespace

std::string porter_stem(const std::string& word) {
    if (word.size() <= 2) return word;
    for (char c : word)
        if (c < 'a' || c > 'z') return word;
    return Stemmer(word).run();
}

} // namespace microrep
