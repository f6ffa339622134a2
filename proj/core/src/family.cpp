#include "hhks/family.hpp"

#include "hhks/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#ifndef HHKS_DEFAULT_REGISTRY
#define HHKS_DEFAULT_REGISTRY "families"
#endif

namespace hhks {

bool operator==(const Expr &a, const Expr &b) {
    return a.kind == b.kind && a.number == b.number && a.name == b.name &&
           a.exponent == b.exponent && a.kids == b.kids;
}

namespace {

class ExprParser {
  public:
    ExprParser(std::string_view s, int line, int col_offset)
        : s_(s), line_(line), off_(col_offset) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string &msg) const { throw SyntaxError(msg, line_, col()); }
    int col() const { return off_ + static_cast<int>(pos_) + 1; }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t'))
            ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }
    Expr node(Expr::Kind k, std::vector<Expr> kids, int c) const {
        Expr e;
        e.kind = k;
        e.kids = std::move(kids);
        e.line = line_;
        e.col = c;
        return e;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            skip_ws();
            const int c = col();
            if (accept('+'))
                lhs = node(Expr::Kind::Add, {std::move(lhs), term()}, c);
            else if (accept('-'))
                lhs = node(Expr::Kind::Sub, {std::move(lhs), term()}, c);
            else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            skip_ws();
            const int c = col();
            if (accept('*'))
                lhs = node(Expr::Kind::Mul, {std::move(lhs), unary()}, c);
            else if (accept('/'))
                lhs = node(Expr::Kind::Div, {std::move(lhs), unary()}, c);
            else
                return lhs;
        }
    }

    Expr unary() {
        skip_ws();
        const int c = col();
        if (accept('-'))
            return node(Expr::Kind::Neg, {unary()}, c);
        if (accept('+'))
            return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        skip_ws();
        const int c = col();
        if (!accept('^'))
            return base;
        skip_ws();
        bool neg = false;
        bool paren = accept('(');
        skip_ws();
        if (accept('-'))
            neg = true;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("exponent must be an integer literal");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000)
                fail("exponent too large");
            ++pos_;
        }
        if (paren)
            expect(')');
        Expr e = node(Expr::Kind::Pow, {std::move(base)}, c);
        e.exponent = neg ? -v : v;
        return e;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        const int c = col();
        const char ch = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                digits += s_[pos_++];
            if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E'))
                fail("floating-point literals are not allowed");
            Expr e = node(Expr::Kind::Number, {}, c);
            e.number = mpz_class(digits);
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                id += s_[pos_++];
            Expr e = node(Expr::Kind::Symbol, {}, c);
            e.name = std::move(id);
            return e;
        }
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (accept('[')) {
            Expr a = expr();
            expect(',');
            Expr b = expr();
            expect(']');
            return node(Expr::Kind::Commutator, {std::move(a), std::move(b)}, c);
        }
        if (accept('{')) {
            Expr a = expr();
            expect(',');
            Expr b = expr();
            expect('}');
            return node(Expr::Kind::Anticommutator, {std::move(a), std::move(b)}, c);
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    int line_;
    int off_;
};

int precedence(const Expr &e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
        return 2;
    case Expr::Kind::Neg:
        return 3;
    case Expr::Kind::Pow:
        return 4;
    default:
        return 5;
    }
}

void print_into(const Expr &e, std::string &out);

void print_child(const Expr &e, int min_prec, std::string &out) {
    if (precedence(e) < min_prec) {
        out += '(';
        print_into(e, out);
        out += ')';
    } else {
        print_into(e, out);
    }
}

void print_into(const Expr &e, std::string &out) {
    switch (e.kind) {
    case Expr::Kind::Number:
        out += e.number.get_str();
        return;
    case Expr::Kind::Symbol:
        out += e.name;
        return;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        print_child(e.kids[0], 1, out);
        out += e.kind == Expr::Kind::Add ? " + " : " - ";
        print_child(e.kids[1], 2, out);
        return;
    case Expr::Kind::Mul:
    case Expr::Kind::Div:
        print_child(e.kids[0], 2, out);
        out += e.kind == Expr::Kind::Mul ? "*" : "/";
        print_child(e.kids[1], 3, out);
        return;
    case Expr::Kind::Neg:
        out += "-";
        print_child(e.kids[0], 3, out);
        return;
    case Expr::Kind::Pow:
        print_child(e.kids[0], 5, out);
        out += "^" + std::to_string(e.exponent);
        return;
    case Expr::Kind::Commutator:
    case Expr::Kind::Anticommutator:
        out += e.kind == Expr::Kind::Commutator ? "[" : "{";
        print_into(e.kids[0], out);
        out += ", ";
        print_into(e.kids[1], out);
        out += e.kind == Expr::Kind::Commutator ? "]" : "}";
        return;
    }
}

// Possible word lengths of the terms of an expression.
std::set<long> degrees(const Expr &e, const std::set<std::string> &gens) {
    switch (e.kind) {
    case Expr::Kind::Number:
        return {0};
    case Expr::Kind::Symbol:
        return {gens.count(e.name) ? 1L : 0L};
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        auto a = degrees(e.kids[0], gens);
        auto b = degrees(e.kids[1], gens);
        a.insert(b.begin(), b.end());
        return a;
    }
    case Expr::Kind::Mul:
    case Expr::Kind::Commutator:
    case Expr::Kind::Anticommutator: {
        std::set<long> out;
        for (long x : degrees(e.kids[0], gens))
            for (long y : degrees(e.kids[1], gens))
                out.insert(x + y);
        return out;
    }
    case Expr::Kind::Div: {
        auto den = degrees(e.kids[1], gens);
        if (den != std::set<long>{0})
            throw SyntaxError("division by an expression containing generators", e.line, e.col);
        return degrees(e.kids[0], gens);
    }
    case Expr::Kind::Neg:
        return degrees(e.kids[0], gens);
    case Expr::Kind::Pow: {
        auto base = degrees(e.kids[0], gens);
        if (base != std::set<long>{0} && e.exponent < 0)
            throw SyntaxError("negative power of a generator", e.line, e.col);
        std::set<long> out;
        for (long x : base)
            out.insert(x * e.exponent);
        return out;
    }
    }
    return {};
}

void check_identifiers(const Expr &e, const std::set<std::string> &known) {
    if (e.kind == Expr::Kind::Symbol && !known.count(e.name))
        throw UnknownIdentifier("'" + e.name + "'", e.line, e.col);
    for (const auto &k : e.kids)
        check_identifiers(k, known);
}

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_ws(const std::string &s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

bool valid_identifier(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ExpectedResults parse_expect(const std::string &v, int line, int col) {
    ExpectedResults r;
    std::set<std::string> seen;
    for (const auto &kv : split_ws(v)) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw SyntaxError("expected key=value in expect block", line, col);
        const std::string k = kv.substr(0, eq), val = kv.substr(eq + 1);
        seen.insert(k);
        try {
            if (k == "hh") {
                std::stringstream ss(val);
                for (std::string item; std::getline(ss, item, ',');)
                    r.hh.push_back(std::stoul(item));
            } else if (k == "para") {
                r.para = std::stoul(val);
            } else if (k == "rank") {
                r.rank = std::stoul(val);
            } else if (k == "inj" || k == "surj") {
                if (val != "yes" && val != "no")
                    throw SyntaxError("expected yes/no for " + k, line, col);
                (k == "inj" ? r.inj : r.surj) = val == "yes";
            } else {
                throw SyntaxError("unknown expect key '" + k + "'", line, col);
            }
        } catch (const std::logic_error &) {
            throw SyntaxError("bad number in expect block", line, col);
        }
    }
    for (const char *k : {"hh", "para", "rank", "inj", "surj"})
        if (!seen.count(k))
            throw SyntaxError(std::string("expect block lacks '") + k + "'", line, col);
    return r;
}

} // namespace

Expr parse_expression(std::string_view text, int line, int col_offset) {
    return ExprParser(text, line, col_offset).parse();
}

std::string print_expression(const Expr &e) {
    std::string out;
    print_into(e, out);
    return out;
}

std::vector<std::string> FamilySpec::param_names() const {
    std::vector<std::string> out;
    for (const auto &p : params)
        out.push_back(p.name);
    return out;
}

FamilySpec parse_family(std::string_view text) {
    FamilySpec f;
    std::set<std::string> gens, known{"zeta"};
    bool have_field = false;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        if (trim(raw).empty()) {
            if (end == text.size())
                break;
            continue;
        }
        const auto colon = raw.find(':');
        if (colon == std::string_view::npos)
            throw SyntaxError("expected 'key: value'", line_no, 1);
        const std::string key = trim(raw.substr(0, colon));
        std::size_t vstart = colon + 1;
        while (vstart < raw.size() && (raw[vstart] == ' ' || raw[vstart] == '\t'))
            ++vstart;
        const std::string value = trim(raw.substr(vstart));
        const int vcol = static_cast<int>(vstart);

        auto binding = [&](const char *what) {
            auto eq = value.find('=');
            if (eq == std::string::npos)
                throw SyntaxError(std::string(what) + " needs 'name = expression'", line_no, vcol + 1);
            Binding b{trim(value.substr(0, eq)), {}};
            if (!valid_identifier(b.name))
                throw SyntaxError("bad identifier '" + b.name + "'", line_no, vcol + 1);
            if (known.count(b.name) || gens.count(b.name))
                throw SyntaxError("duplicate name '" + b.name + "'", line_no, vcol + 1);
            std::size_t rhs = eq + 1;
            b.value = parse_expression(std::string_view(value).substr(rhs), line_no,
                                       vcol + static_cast<int>(rhs));
            return b;
        };

        if (key == "name") {
            f.name = value;
        } else if (key == "table") {
            try {
                f.table = std::stoi(value);
            } catch (const std::logic_error &) {
                throw SyntaxError("table must be an integer", line_no, vcol + 1);
            }
        } else if (key == "row") {
            f.row = value;
        } else if (key == "field") {
            try {
                f.conductor = static_cast<unsigned>(std::stoul(value));
            } catch (const std::logic_error &) {
                throw SyntaxError("field must be a positive conductor", line_no, vcol + 1);
            }
            if (f.conductor == 0)
                throw SyntaxError("field must be a positive conductor", line_no, vcol + 1);
            have_field = true;
            if (f.conductor == 4)
                known.insert("i");
        } else if (key == "generators") {
            for (auto &g : split_ws(value)) {
                if (!valid_identifier(g) || gens.count(g))
                    throw SyntaxError("bad generator '" + g + "'", line_no, vcol + 1);
                gens.insert(g);
                f.generators.push_back(g);
            }
            if (gens.count("zeta") || (gens.count("i") && f.conductor == 4))
                throw SyntaxError("generator shadows a reserved constant", line_no, vcol + 1);
            if (gens.count("i"))
                known.erase("i");
        } else if (key == "constant" || key == "param" || key == "let") {
            Binding b = binding(key.c_str());
            if (key == "let") {
                check_identifiers(b.value, known);
            } else {
                // Constants and parameter defaults are field values: only
                // zeta, `i` and earlier constants may appear.
                std::set<std::string> consts{"zeta"};
                if (f.conductor == 4 && !gens.count("i"))
                    consts.insert("i");
                for (const auto &c : f.constants)
                    consts.insert(c.name);
                check_identifiers(b.value, consts);
            }
            if (degrees(b.value, gens) != std::set<long>{0})
                throw SyntaxError("coefficient expressions cannot contain generators", line_no,
                                  vcol + 1);
            known.insert(b.name);
            (key == "constant" ? f.constants : key == "param" ? f.params : f.lets)
                .push_back(std::move(b));
        } else if (key == "constraint") {
            Expr e = parse_expression(value, line_no, vcol);
            check_identifiers(e, known);
            f.constraints.push_back(std::move(e));
        } else if (key == "expect") {
            f.expected = parse_expect(value, line_no, vcol + 1);
        } else if (key == "note") {
            f.notes.push_back(value);
        } else if (key == "rel") {
            if (f.generators.empty())
                throw SyntaxError("relation before generators", line_no, vcol + 1);
            Expr e = parse_expression(value, line_no, vcol);
            std::set<std::string> all = known;
            all.insert(gens.begin(), gens.end());
            check_identifiers(e, all);
            if (degrees(e, gens) != std::set<long>{2})
                throw NonQuadraticTerm("relation terms must have degree 2", line_no, vcol + 1);
            f.relations.push_back(std::move(e));
        } else {
            throw SyntaxError("unknown key '" + key + "'", line_no, 1);
        }
        if (end == text.size())
            break;
    }
    if (f.name.empty())
        throw SyntaxError("missing 'name'", line_no, 1);
    if (!have_field)
        throw SyntaxError("missing 'field'", line_no, 1);
    if (f.generators.size() != 4)
        throw SyntaxError("expected 4 generators", line_no, 1);
    if (f.relations.size() != 6)
        throw SyntaxError("expected 6 relations, found " + std::to_string(f.relations.size()),
                          line_no, 1);
    return f;
}

std::string print_family(const FamilySpec &f) {
    std::ostringstream os;
    os << "name: " << f.name << "\n";
    if (f.table)
        os << "table: " << f.table << "\n";
    if (!f.row.empty())
        os << "row: " << f.row << "\n";
    os << "field: " << f.conductor << "\n";
    os << "generators:";
    for (const auto &g : f.generators)
        os << " " << g;
    os << "\n";
    for (const auto &c : f.constants)
        os << "constant: " << c.name << " = " << print_expression(c.value) << "\n";
    for (const auto &p : f.params)
        os << "param: " << p.name << " = " << print_expression(p.value) << "\n";
    for (const auto &l : f.lets)
        os << "let: " << l.name << " = " << print_expression(l.value) << "\n";
    for (const auto &c : f.constraints)
        os << "constraint: " << print_expression(c) << "\n";
    if (f.expected) {
        const auto &e = *f.expected;
        os << "expect: hh=";
        for (std::size_t i = 0; i < e.hh.size(); ++i)
            os << (i ? "," : "") << e.hh[i];
        os << " para=" << e.para << " rank=" << e.rank << " inj=" << yes_no(e.inj)
           << " surj=" << yes_no(e.surj) << "\n";
    }
    for (const auto &n : f.notes)
        os << "note: " << n << "\n";
    for (const auto &r : f.relations)
        os << "rel: " << print_expression(r) << "\n";
    return os.str();
}

FamilySpec load_family(const std::filesystem::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error("cannot open family file " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string name = file.filename().string();
    try {
        return parse_family(ss.str());
    } catch (const SyntaxError &e) {
        throw SyntaxError(e.message(), e.line(), e.column(), name);
    } catch (const NonQuadraticTerm &e) {
        throw NonQuadraticTerm(e.message(), e.line(), e.column(), name);
    } catch (const UnknownIdentifier &e) {
        throw UnknownIdentifier(e.message(), e.line(), e.column(), name);
    }
}

void Scope::bind(const std::string &name, DualNumber v) {
    values_.insert_or_assign(name, std::move(v));
}

void Scope::bind_generator(const std::string &name, std::size_t index) { gens_[name] = index; }

const DualNumber *Scope::lookup(const std::string &name) const {
    auto it = values_.find(name);
    return it == values_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> Scope::generator(const std::string &name) const {
    auto it = gens_.find(name);
    if (it == gens_.end())
        return std::nullopt;
    return it->second;
}

namespace {

void add_into(NcPoly &acc, const NcPoly &p, bool negate) {
    for (const auto &[w, c] : p) {
        auto it = acc.find(w);
        if (it == acc.end()) {
            acc.emplace(w, negate ? -c : c);
        } else {
            if (negate)
                it->second -= c;
            else
                it->second += c;
            if (it->second.is_zero())
                acc.erase(it);
        }
    }
}

NcPoly multiply(const NcPoly &a, const NcPoly &b) {
    NcPoly out;
    for (const auto &[wa, ca] : a)
        for (const auto &[wb, cb] : b) {
            std::vector<std::size_t> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            add_into(out, NcPoly{{std::move(w), ca * cb}}, false);
        }
    return out;
}

DualNumber as_scalar(const NcPoly &p, const Scope &s, const Expr &where) {
    if (p.empty())
        return DualNumber(s.field().zero(), s.slots());
    if (p.size() != 1 || !p.begin()->first.empty())
        throw SyntaxError("expected a scalar expression", where.line, where.col);
    return p.begin()->second;
}

NcPoly scalar_poly(DualNumber v) {
    NcPoly p;
    if (!v.is_zero())
        p.emplace(std::vector<std::size_t>{}, std::move(v));
    return p;
}

} // namespace

NcPoly evaluate_polynomial(const Expr &e, const Scope &s) {
    switch (e.kind) {
    case Expr::Kind::Number:
        return scalar_poly(DualNumber(s.field().from_rational(mpq_class(e.number)), s.slots()));
    case Expr::Kind::Symbol: {
        if (auto g = s.generator(e.name))
            return NcPoly{{{*g}, DualNumber(s.field().one(), s.slots())}};
        if (const DualNumber *v = s.lookup(e.name))
            return scalar_poly(*v);
        throw UnknownIdentifier("'" + e.name + "'", e.line, e.col);
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        NcPoly a = evaluate_polynomial(e.kids[0], s);
        add_into(a, evaluate_polynomial(e.kids[1], s), e.kind == Expr::Kind::Sub);
        return a;
    }
    case Expr::Kind::Mul:
        return multiply(evaluate_polynomial(e.kids[0], s), evaluate_polynomial(e.kids[1], s));
    case Expr::Kind::Commutator:
    case Expr::Kind::Anticommutator: {
        NcPoly a = evaluate_polynomial(e.kids[0], s);
        NcPoly b = evaluate_polynomial(e.kids[1], s);
        NcPoly ab = multiply(a, b);
        add_into(ab, multiply(b, a), e.kind == Expr::Kind::Commutator);
        return ab;
    }
    case Expr::Kind::Div: {
        NcPoly num = evaluate_polynomial(e.kids[0], s);
        DualNumber den = as_scalar(evaluate_polynomial(e.kids[1], s), s, e.kids[1]);
        if (den.value().is_zero())
            throw PoleAtPoint("denominator '" + print_expression(e.kids[1]) +
                              "' vanishes at the evaluation point");
        NcPoly out;
        for (auto &[w, c] : num)
            out.emplace(w, c / den);
        return out;
    }
    case Expr::Kind::Neg: {
        NcPoly a = evaluate_polynomial(e.kids[0], s);
        for (auto &[w, c] : a)
            c = -c;
        return a;
    }
    case Expr::Kind::Pow: {
        NcPoly base = evaluate_polynomial(e.kids[0], s);
        bool scalar = base.empty() || (base.size() == 1 && base.begin()->first.empty());
        if (scalar) {
            DualNumber b = as_scalar(base, s, e);
            if (e.exponent < 0 && b.value().is_zero())
                throw PoleAtPoint("negative power of '" + print_expression(e.kids[0]) +
                                  "' which vanishes at the evaluation point");
            return scalar_poly(b.pow(e.exponent));
        }
        if (e.exponent < 0)
            throw SyntaxError("negative power of a generator", e.line, e.col);
        NcPoly out = scalar_poly(DualNumber(s.field().one(), s.slots()));
        for (long k = 0; k < e.exponent; ++k)
            out = multiply(out, base);
        return out;
    }
    }
    return {};
}

DualNumber evaluate_scalar(const Expr &e, const Scope &s) {
    return as_scalar(evaluate_polynomial(e, s), s, e);
}

Scope constant_scope(const FamilySpec &f, std::size_t slots) {
    const auto &F = CyclotomicField::get(f.conductor);
    Scope s(F, slots);
    s.bind("zeta", DualNumber(F.zeta(), slots));
    if (f.conductor == 4 &&
        std::find(f.generators.begin(), f.generators.end(), "i") == f.generators.end())
        s.bind("i", DualNumber(F.zeta(), slots));
    for (const auto &c : f.constants)
        s.bind(c.name, evaluate_scalar(c.value, s));
    return s;
}

FieldElement evaluate_constant_expr(const FamilySpec &f, const Expr &e) {
    return evaluate_scalar(e, constant_scope(f, 0)).value();
}

const RegistryEntry *Registry::find(std::string_view name) const {
    auto lower = [](std::string_view s) {
        std::string o(s);
        for (auto &c : o)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return o;
    };
    const std::string key = lower(name);
    for (const auto &e : entries)
        if (lower(e.spec.name) == key)
            return &e;
    for (const auto &e : entries)
        if (!e.spec.row.empty() && lower(e.spec.row) == key)
            return &e;
    return nullptr;
}

Registry load_registry(const std::filesystem::path &dir) {
    std::ifstream in(dir / "MANIFEST");
    if (!in)
        throw Error("cannot open registry manifest in " + dir.string());
    Registry reg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::istringstream is(t);
        std::string file, status;
        is >> file >> status;
        std::string rest;
        std::getline(is, rest);
        rest = trim(rest);
        if (file == "-") {
            if (status != "not-transcribable")
                throw Error("MANIFEST:" + std::to_string(line_no) + ": bad entry");
            reg.not_transcribable.push_back(rest);
            continue;
        }
        if (status != "ok" && status != "discrepancy")
            throw Error("MANIFEST:" + std::to_string(line_no) + ": unknown status '" + status + "'");
        if (status == "discrepancy" && rest.empty())
            throw Error("MANIFEST:" + std::to_string(line_no) + ": discrepancy needs a justification");
        reg.entries.push_back({file, load_family(dir / file), status, rest});
    }
    return reg;
}

std::filesystem::path default_registry_dir() {
    if (const char *env = std::getenv("HHKS_REGISTRY"))
        return env;
    return HHKS_DEFAULT_REGISTRY;
}

} // namespace hhks
