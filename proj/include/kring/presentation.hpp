#pragma once

#include "kring/groebner.hpp"

#include <cctype>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

namespace kr {

struct RingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Z[1/N] for the listed primes, optionally with beta adjoined; `rational` means Q.
struct BaseRing {
    std::vector<long> inverted;
    bool beta = false;
    bool rational = false;

    static BaseRing Z() { return {}; }
    static BaseRing Zp(bool beta = false) { return {{2}, beta, false}; }
    static BaseRing Qq(bool beta = false) { return {{}, beta, true}; }

    bool allows(const Q& c) const {
        if (rational) return true;
        mpz_class d = c.get_den();
        for (long p : inverted)
            while (d % p == 0) d /= p;
        return d == 1;
    }

    std::string label() const {
        if (rational) return "Q";
        if (inverted.empty()) return "Z";
        if (inverted == std::vector<long>{2}) return "Z'";
        long n = std::accumulate(inverted.begin(), inverted.end(), 1L, std::multiplies<long>());
        return "Z[1/" + std::to_string(n) + "]";
    }
    bool operator==(const BaseRing& o) const {
        return inverted == o.inverted && beta == o.beta && rational == o.rational;
    }
};

enum class GenKind { Plain, Beta, Reciprocal, InverseOf };

struct Generator {
    std::string name;
    int weight = 0;
    int degree = 0;  // sheared degree, equal to weight by convention
    bool invertible = false;
    bool adic = false;
    GenKind kind = GenKind::Plain;
    int partner = -1;  // reciprocal index for invertible generators, owner for Reciprocal
    Poly inverts;      // for InverseOf: the element this generator inverts
    std::string label;  // display text, e.g. (a-1)/c2; empty means the name
};

std::string format_poly(const Poly& p, const std::vector<std::string>& names, bool explicit_coeffs);

/// A weight-graded commutative ring given by generators and homogeneous relations.
class Presentation {
  public:
    BaseRing base;
    std::vector<Generator> gens;
    std::vector<Poly> rels;  // user relations; reciprocal relations are implied
    std::vector<std::string> rel_text;  // as written, for display
    std::vector<bool> rel_shown;        // defining relations of labelled fractions are not displayed

    Presentation() = default;
    explicit Presentation(BaseRing b) : base(std::move(b)) {
        if (base.beta) {
            Generator g;
            g.name = "beta";
            g.weight = g.degree = 2;
            g.kind = GenKind::Beta;
            gens.push_back(g);
        }
    }

    int ngens() const { return static_cast<int>(gens.size()); }

    int add_gen(const std::string& name, int weight, bool invertible = false, bool adic = false) {
        check_name(name);
        Generator g;
        g.name = name;
        g.weight = g.degree = weight;
        g.invertible = invertible;
        g.adic = adic;
        int k = push(g);
        if (invertible) {
            Generator r;
            r.name = name + "_inv";
            r.weight = r.degree = -weight;
            r.kind = GenKind::Reciprocal;
            r.partner = k;
            int j = push(r);
            gens[k].partner = j;
        }
        return k;
    }

    /// Adjoins a generator `name` with name * e = 1.
    int add_inverse(const std::string& name, const Poly& e, const std::string& text = {}) {
        check_name(name);
        int w = homogeneous_weight(e);
        Generator g;
        g.name = name;
        g.weight = g.degree = -w;
        g.kind = GenKind::InverseOf;
        g.inverts = e;
        if (!text.empty()) g.label = "1/(" + text + ")";
        return push(g);
    }

    void add_rel(const Poly& r, std::string text = {}, bool shown = true) {
        if (r.zero()) return;
        homogeneous_weight(r);
        rels.push_back(r);
        rel_text.push_back(text.empty() ? str(r) : std::move(text));
        rel_shown.push_back(shown);
        gb_.reset();
    }

    /// A generator standing for a fraction: name * den = num, displayed as `text`.
    int add_fraction(const std::string& name, int weight, const std::string& num, const std::string& den,
                     const std::string& text) {
        int k = add_gen(name, weight);
        gens[k].label = text;
        add_rel(Poly::var(k) * parse(den) - parse(num), {}, false);
        return k;
    }

    void set_label(const std::string& name, const std::string& text) { gens[at(name)].label = text; }
    void add_rel(const std::string& s) { add_rel(parse(s), s); }

    int index(const std::string& name) const {
        for (int i = 0; i < ngens(); ++i)
            if (gens[i].name == name) return i;
        return -1;
    }
    int at(const std::string& name) const {
        int i = index(name);
        if (i < 0) throw RingError("unknown generator " + name);
        return i;
    }
    Poly var(const std::string& name) const { return Poly::var(at(name)); }

    int weight(const Mono& m) const {
        int w = 0;
        for (int i = 0; i < ngens(); ++i) w += m.e[i] * gens[i].weight;
        return w;
    }

    int homogeneous_weight(const Poly& p) const {
        if (p.zero()) return 0;
        int w = weight(p.t[0].m);
        for (auto& x : p.t)
            if (weight(x.m) != w) throw RingError("relation is not weight homogeneous: " + str(p));
        return w;
    }
    bool is_homogeneous(const Poly& p) const {
        if (p.zero()) return true;
        int w = weight(p.t[0].m);
        for (auto& x : p.t)
            if (weight(x.m) != w) return false;
        return true;
    }

    std::vector<Poly> all_relations() const {
        std::vector<Poly> out = rels;
        for (int i = 0; i < ngens(); ++i) {
            const auto& g = gens[i];
            if (g.kind == GenKind::Reciprocal) out.push_back(Poly::var(i) * Poly::var(g.partner) - Poly(Q(1)));
            if (g.kind == GenKind::InverseOf) out.push_back(Poly::var(i) * g.inverts - Poly(Q(1)));
        }
        return out;
    }

    const Groebner& gb() const {
        if (!gb_) gb_ = std::make_shared<Groebner>(all_relations());
        return *gb_;
    }

    Poly nf(const Poly& p) const {
        Poly r = gb().nf(p);
        if (!base.rational)
            for (auto& x : r.t)
                if (!base.allows(x.c)) {
                    bool input_ok = true;
                    for (auto& y : p.t) input_ok = input_ok && base.allows(y.c);
                    if (input_ok) throw RingError("normal form leaves the localization " + base.label() + ": " + str(r));
                }
        return r;
    }
    Poly nf(const std::string& s) const { return nf(parse(s)); }

    bool member(const Poly& p) const { return gb().nf(p).zero(); }

    std::vector<std::string> names() const {
        std::vector<std::string> v;
        for (auto& g : gens) v.push_back(g.name);
        return v;
    }

    std::string str(const Poly& p) const { return format_poly(p, names(), false); }
    std::string canon(const Poly& p) const { return format_poly(p, names(), true); }

    Poly parse(const std::string& s) const;

    /// Compact human form, e.g. Z'[beta,c2,c3,b]/(b*c3).
    std::string display() const {
        std::string out = base.label() + "[", adic;
        bool first = true;
        for (auto& g : gens) {
            if (g.kind == GenKind::Reciprocal) continue;
            std::string t;
            if (!g.label.empty())
                t = g.label;
            else if (g.kind == GenKind::InverseOf)
                t = "1/(" + str(g.inverts) + ")";
            else
                t = g.invertible ? g.name + "^+-1" : g.name;
            if (g.adic) {
                adic += (adic.empty() ? "" : ",") + t;
                continue;
            }
            if (!first) out += ",";
            first = false;
            out += t;
        }
        out += "]";
        if (!adic.empty()) out += "[[" + adic + "]]";
        std::string rs;
        for (size_t i = 0; i < rels.size(); ++i)
            if (rel_shown[i]) rs += (rs.empty() ? "" : ", ") + rel_text[i];
        if (!rs.empty()) out += "/(" + rs + ")";
        return out;
    }

    int max_abs_weight() const {
        int m = 0;
        for (auto& g : gens) m = std::max(m, std::abs(g.weight));
        return m;
    }

  private:
    mutable std::shared_ptr<Groebner> gb_;

    void check_name(const std::string& name) const {
        if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
            throw RingError("bad generator name '" + name + "'");
        for (char c : name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) throw RingError("bad generator name '" + name + "'");
        if (index(name) >= 0) throw RingError("duplicate generator " + name);
    }
    int push(const Generator& g) {
        if (ngens() >= kMaxVars) throw RingError("too many generators");
        gens.push_back(g);
        gb_.reset();
        return ngens() - 1;
    }
};

inline std::string format_mono(const Mono& m, const std::vector<std::string>& names) {
    std::string s;
    for (size_t i = 0; i < names.size(); ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += "*";
        s += names[i];
        if (m.e[i] != 1) s += "^" + std::to_string(m.e[i]);
    }
    return s;
}

inline std::string format_poly(const Poly& p, const std::vector<std::string>& names, bool explicit_coeffs) {
    if (p.zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& x : p.t) {
        Q c = x.c;
        bool neg = c < 0;
        if (neg) c = -c;
        std::string ms = format_mono(x.m, names);
        std::string cs = c.get_str();
        std::string body;
        if (ms.empty())
            body = cs;
        else if (!explicit_coeffs && c == 1)
            body = ms;
        else
            body = cs + "*" + ms;
        if (first)
            out += neg ? "-" + body : body;
        else
            out += neg ? " - " + body : " + " + body;
        first = false;
    }
    return out;
}

namespace detail {

class PolyParser {
  public:
    PolyParser(const std::string& s, const Presentation& p) : s_(s), p_(p) {}

    Poly run() {
        Poly r = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

  private:
    const std::string& s_;
    const Presentation& p_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw RingError("parse error in '" + s_ + "' at " + std::to_string(i_) + ": " + msg);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    Poly expr() {
        Poly r;
        bool neg = eat('-');
        if (!neg) eat('+');
        r = term();
        if (neg) r = -r;
        for (;;) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r -= term();
            else
                return r;
        }
    }
    Poly term() {
        Poly r = power();
        for (;;) {
            if (eat('*')) {
                r *= power();
            } else if (eat('/')) {
                Poly d = power();
                if (d.t.size() != 1 || !d.t[0].m.is_one()) fail("division only by numbers");
                r = (1 / d.t[0].c) * r;
            } else {
                return r;
            }
        }
    }
    Poly power() {
        Poly b = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("exponent expected");
            int k = std::stoi(s_.substr(st, i_ - st));
            if (neg) fail("negative exponent");
            b = pow(b, k);
        }
        return b;
    }
    Poly atom() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            Poly r = expr();
            if (!eat(')')) fail("')' expected");
            return r;
        }
        if (c == '-') {
            ++i_;
            return -atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return Poly(Q(mpz_class(s_.substr(st, i_ - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string name = s_.substr(st, i_ - st);
            int k = p_.index(name);
            if (k < 0) fail("unknown generator " + name);
            return Poly::var(k);
        }
        fail("unexpected character");
    }
};

}  // namespace detail

inline Poly Presentation::parse(const std::string& s) const { return detail::PolyParser(s, *this).run(); }

}  // namespace kr
