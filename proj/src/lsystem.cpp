#include "fge/lsystem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fge/errors.hpp"

namespace fge {

namespace {

constexpr std::size_t kBranchDepthCap = 1'000'000;
constexpr std::size_t kDeriveLengthCap = std::size_t{1} << 30;

constexpr double kSqrt3Half = 0.86602540378443864676;
constexpr double kSqrt2Half = 0.70710678118654752440;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

SymbolClass default_symbol_class(char symbol) {
    switch (symbol) {
        case '+': return SymbolClass::TurnPlus;
        case '-': return SymbolClass::TurnMinus;
        case '(': return SymbolClass::PushBranch;
        case ')': return SymbolClass::PopBranch;
        default: break;
    }
    const unsigned char c = static_cast<unsigned char>(symbol);
    if (std::isupper(c)) return SymbolClass::Draw;
    if (std::islower(c)) return SymbolClass::Move;
    return SymbolClass::NonGraphic;
}

SymbolClass D0LSystem::class_of(char symbol) const {
    const auto it = classes.find(symbol);
    if (it == classes.end()) throw ClassificationError(symbol);
    return it->second;
}

const std::string* D0LSystem::rule_for(char symbol) const {
    const auto it = rules.find(symbol);
    return it == rules.end() ? nullptr : &it->second;
}

std::string derive(const D0LSystem& system, std::string_view word, std::size_t steps) {
    for (char c : word) system.class_of(c);  // classification precondition

    std::string current(word);
    for (std::size_t step = 0; step < steps; ++step) {
        std::size_t next_len = 0;
        for (char c : current) {
            const std::string* rhs = system.rule_for(c);
            next_len += rhs ? rhs->size() : 1;
            if (next_len > kDeriveLengthCap)
                throw std::length_error("derived word exceeds the length cap");
        }
        std::string next;
        next.reserve(next_len);
        for (char c : current) {
            const std::string* rhs = system.rule_for(c);
            if (rhs)
                next.append(*rhs);
            else
                next.push_back(c);
        }
        current = std::move(next);
    }
    return current;
}

void unit_direction(std::int64_t m, int n, double& x, double& y) {
    const std::int64_t t = floor_mod(m, n);
    if ((12 * t) % n == 0) {
        static constexpr double cs[12][2] = {
            {1, 0},           {kSqrt3Half, 0.5},  {0.5, kSqrt3Half},
            {0, 1},           {-0.5, kSqrt3Half}, {-kSqrt3Half, 0.5},
            {-1, 0},          {-kSqrt3Half, -0.5},{-0.5, -kSqrt3Half},
            {0, -1},          {0.5, -kSqrt3Half}, {kSqrt3Half, -0.5},
        };
        const auto idx = static_cast<std::size_t>(12 * t / n);
        x = cs[idx][0];
        y = cs[idx][1];
        return;
    }
    if ((8 * t) % n == 0) {
        static constexpr double cs[8][2] = {
            {1, 0},                    {kSqrt2Half, kSqrt2Half},
            {0, 1},                    {-kSqrt2Half, kSqrt2Half},
            {-1, 0},                   {-kSqrt2Half, -kSqrt2Half},
            {0, -1},                   {kSqrt2Half, -kSqrt2Half},
        };
        const auto idx = static_cast<std::size_t>(8 * t / n);
        x = cs[idx][0];
        y = cs[idx][1];
        return;
    }
    if (2 * t > n) {  // conjugate symmetry keeps mirrored headings sign-exact
        unit_direction(n - t, n, x, y);
        y = -y;
        return;
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / n;
    x = std::cos(angle);
    y = std::sin(angle);
}

TurtlePath turtle_walk(std::string_view word, const D0LSystem& system,
                       const TurtleConfig& config) {
    if (config.angle_denominator <= 0)
        throw DomainError("angle denominator must be positive");
    const int n = config.angle_denominator;

    // direction per reduced heading index, so headings never drift
    std::vector<double> dir_x(static_cast<std::size_t>(n)), dir_y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) unit_direction(i, n, dir_x[static_cast<std::size_t>(i)], dir_y[static_cast<std::size_t>(i)]);

    struct Frame {
        double x, y;
        std::int64_t turns;
    };

    TurtlePath path;
    std::vector<Frame> stack;
    double x = 0.0, y = 0.0;
    std::int64_t turns = 0;

    for (char c : word) {
        switch (system.class_of(c)) {
            case SymbolClass::Draw:
            case SymbolClass::Move: {
                const auto h = static_cast<std::size_t>(
                    floor_mod(turns * config.angle_numerator, n));
                const double nx = x + config.step_length * dir_x[h];
                const double ny = y + config.step_length * dir_y[h];
                path.segments.push_back(
                    {x, y, nx, ny, system.class_of(c) == SymbolClass::Draw});
                x = nx;
                y = ny;
                break;
            }
            case SymbolClass::TurnPlus: ++turns; break;
            case SymbolClass::TurnMinus: --turns; break;
            case SymbolClass::PushBranch:
                if (stack.size() >= kBranchDepthCap)
                    throw BranchError("branch stack depth cap exceeded");
                stack.push_back({x, y, turns});
                break;
            case SymbolClass::PopBranch:
                if (stack.empty()) throw BranchError("branch stack underflow");
                x = stack.back().x;
                y = stack.back().y;
                turns = stack.back().turns;
                stack.pop_back();
                break;
            case SymbolClass::NonGraphic: break;
        }
    }
    if (!stack.empty()) throw BranchError("unclosed branch");

    path.end_x = x;
    path.end_y = y;
    path.net_turns = turns;
    return path;
}

bool is_angle_invariant(std::string_view word, const D0LSystem& system,
                        const TurtleConfig& config) {
    if (config.angle_denominator <= 0)
        throw DomainError("angle denominator must be positive");
    std::int64_t turns = 0;
    std::vector<std::int64_t> stack;
    for (char c : word) {
        switch (system.class_of(c)) {
            case SymbolClass::TurnPlus: ++turns; break;
            case SymbolClass::TurnMinus: --turns; break;
            case SymbolClass::PushBranch:
                if (stack.size() >= kBranchDepthCap)
                    throw BranchError("branch stack depth cap exceeded");
                stack.push_back(turns);
                break;
            case SymbolClass::PopBranch:
                if (stack.empty()) throw BranchError("branch stack underflow");
                turns = stack.back();
                stack.pop_back();
                break;
            default: break;
        }
    }
    return floor_mod(turns * config.angle_numerator, config.angle_denominator) == 0;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

void check_word_chars(std::string_view word, int line, int col_base) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(word[i]);
        if (c < 33 || c > 126)
            throw ParseError("invalid symbol in word", line, col_base + static_cast<int>(i));
    }
}

void classify_into(D0LSystem& system, std::string_view word) {
    for (char c : word)
        system.classes.emplace(c, default_symbol_class(c));
}

}  // namespace

ParsedLSystem parse_lsystem(std::string_view text) {
    ParsedLSystem parsed;
    bool have_axiom = false;
    bool have_angle = false;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string_view stripped = trim(line);
        if (!stripped.empty()) {
            const int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
            if (stripped.starts_with("axiom:")) {
                if (have_axiom) throw ParseError("duplicate axiom", line_no, col);
                const std::string_view word = trim(stripped.substr(6));
                if (word.empty()) throw ParseError("empty axiom", line_no, col);
                check_word_chars(word, line_no, col);
                parsed.system.axiom = std::string(word);
                classify_into(parsed.system, word);
                have_axiom = true;
            } else if (stripped.starts_with("angle:")) {
                if (have_angle) throw ParseError("duplicate angle", line_no, col);
                const std::string_view frac = trim(stripped.substr(6));
                const std::size_t slash = frac.find('/');
                if (slash == std::string_view::npos)
                    throw ParseError("angle must be a fraction k/n of a full turn", line_no, col);
                int k = 0, n = 0;
                const auto* kb = frac.data();
                const auto [kp, kec] = std::from_chars(kb, kb + slash, k);
                const auto* nb = frac.data() + slash + 1;
                const auto [np, nec] = std::from_chars(nb, frac.data() + frac.size(), n);
                if (kec != std::errc{} || nec != std::errc{} || kp != kb + slash ||
                    np != frac.data() + frac.size() || n <= 0)
                    throw ParseError("angle must be a fraction k/n with n > 0", line_no, col);
                parsed.config.angle_numerator = k;
                parsed.config.angle_denominator = n;
                have_angle = true;
            } else if (const auto arrow = stripped.find("->"); arrow != std::string_view::npos) {
                const std::string_view lhs = trim(stripped.substr(0, arrow));
                const std::string_view rhs = trim(stripped.substr(arrow + 2));
                if (lhs.size() != 1)
                    throw ParseError("rule symbol must be a single character", line_no, col);
                const char symbol = lhs[0];
                check_word_chars(rhs, line_no, col);
                const SymbolClass sc = default_symbol_class(symbol);
                if (sc != SymbolClass::Draw && sc != SymbolClass::Move &&
                    sc != SymbolClass::NonGraphic && rhs != lhs)
                    throw ParseError("reserved symbol admits only its trivial rule", line_no, col);
                if (parsed.system.rules.count(symbol))
                    throw ParseError(std::string("duplicate rule for '") + symbol + "'", line_no, col);
                parsed.system.rules.emplace(symbol, std::string(rhs));
                parsed.system.classes.emplace(symbol, sc);
                classify_into(parsed.system, rhs);
            } else {
                throw ParseError("expected 'axiom:', 'angle:' or a 'X -> word' rule", line_no, col);
            }
        }

        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }

    if (!have_axiom) throw ParseError("missing axiom", line_no, 1);
    if (!have_angle) throw ParseError("missing angle", line_no, 1);
    return parsed;
}

std::string render_svg(const TurtlePath& path) {
    constexpr double kBox = 1000.0;
    constexpr double kMargin = 25.0;

    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool any = false;
    for (const Segment& s : path.segments) {
        if (!s.visible) continue;
        if (!any) {
            min_x = std::min(s.x0, s.x1);
            max_x = std::max(s.x0, s.x1);
            min_y = std::min(s.y0, s.y1);
            max_y = std::max(s.y0, s.y1);
            any = true;
        } else {
            min_x = std::min({min_x, s.x0, s.x1});
            max_x = std::max({max_x, s.x0, s.x1});
            min_y = std::min({min_y, s.y0, s.y1});
            max_y = std::max({max_y, s.y0, s.y1});
        }
    }

    const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
    const double scale = (kBox - 2 * kMargin) / span;
    const double off_x = kMargin + (kBox - 2 * kMargin - (max_x - min_x) * scale) / 2;
    const double off_y = kMargin + (kBox - 2 * kMargin - (max_y - min_y) * scale) / 2;

    const auto tx = [&](double x) { return off_x + (x - min_x) * scale; };
    const auto ty = [&](double y) { return kBox - (off_y + (y - min_y) * scale); };  // y up

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
    out.precision(6);
    out << std::fixed;
    for (const Segment& s : path.segments) {
        if (!s.visible) continue;
        out << "  <line x1=\"" << tx(s.x0) << "\" y1=\"" << ty(s.y0) << "\" x2=\""
            << tx(s.x1) << "\" y2=\"" << ty(s.y1)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace fge
