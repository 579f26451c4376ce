#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace fge {

enum class SymbolClass {
    Draw,        // advance one step, visible trail
    Move,        // advance one step, no trail
    TurnPlus,    // heading += alpha
    TurnMinus,   // heading -= alpha
    PushBranch,  // save (position, heading)
    PopBranch,   // restore (position, heading)
    NonGraphic,
};

// Classification used by the text format and the evolution pipeline:
// uppercase letters draw, lowercase letters move, + - ( ) are fixed,
// anything else is non-graphic.
SymbolClass default_symbol_class(char symbol);

// Turtle angle step alpha = 2*pi*k/n, kept as the rational pair so headings
// stay exact integer multiples of alpha.
struct TurtleConfig {
    int angle_numerator = 1;    // k
    int angle_denominator = 4;  // n > 0
    double step_length = 1.0;
};

// Deterministic context-free L-system. Symbols absent from `rules` have the
// implicit trivial rule s ::= s.
struct D0LSystem {
    std::string axiom;
    std::map<char, std::string> rules;
    std::map<char, SymbolClass> classes;

    SymbolClass class_of(char symbol) const;  // throws ClassificationError
    const std::string* rule_for(char symbol) const;  // nullptr = trivial rule
};

struct Segment {
    double x0, y0, x1, y1;
    bool visible;
};

struct TurtlePath {
    std::vector<Segment> segments;
    double end_x = 0.0;
    double end_y = 0.0;
    std::int64_t net_turns = 0;  // signed alpha-steps, branch turns excluded
};

// Applies all rules simultaneously `steps` times. steps = 0 returns `word`.
std::string derive(const D0LSystem& system, std::string_view word, std::size_t steps);

TurtlePath turtle_walk(std::string_view word, const D0LSystem& system,
                       const TurtleConfig& config);

// True iff the walk ends with the starting heading: net_turns * k == 0 (mod n),
// checked in exact integer arithmetic.
bool is_angle_invariant(std::string_view word, const D0LSystem& system,
                        const TurtleConfig& config);

struct ParsedLSystem {
    D0LSystem system;
    TurtleConfig config;
};

// Text format: `axiom: <word>`, one `X -> <word>` per rule, `angle: k/n`
// (fraction of a full turn), `#` comments.
ParsedLSystem parse_lsystem(std::string_view text);

// Visible segments as <line> elements scaled into a fixed 1000x1000 viewBox.
std::string render_svg(const TurtlePath& path);

// cos/sin of 2*pi*m/n with sign-exact symmetry (mirrored headings cancel
// exactly) and exact values at multiples of 30 and 45 degrees.
void unit_direction(std::int64_t m, int n, double& x, double& y);

}  // namespace fge
