#pragma once

#include <array>
#include <string>

#include "dodeca/rules.hpp"
#include "dodeca/tiles.hpp"

namespace dodeca {

enum class ExitCode { Ok = 0, VerifyFailed = 1, Usage = 2, Budget = 3 };

struct RenderStyle {
    /// Fill per TileKind, indexed by index_of.
    std::array<std::string, kKindCount> fill{"#FFFFFF", "#D9534F", "#9E9E9E", "#F4C542", "#4A78C2"};
    std::string stroke = "#333";
    double stroke_width = 0.02;
    /// Draw all half-triangles in the gray fill and hide the altitude between
    /// mated halves.
    bool monochrome_triangles = false;
    /// Scale generation g by inflation^-g so every generation has seed size.
    bool deflate = true;
    /// Margin around the patch, in seed units.
    double margin = 0.05;
};

/// x rendered with 12 significant digits from its exact value.
std::string svg_number(const RingValue& x);

/// SVG 1.1 document: one polygon per tile, or per mated pair of halves in
/// monochrome mode, followed by a single outline path.
std::string render_svg(const Patch& patch, const RingValue& inflation, const RenderStyle& style = {});

/// Entry point of the dodeca executable; returns the process exit code.
int run_cli(int argc, char** argv);

} // namespace dodeca
