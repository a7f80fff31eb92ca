#ifndef SIMOUT_RENDER_HPP_
#define SIMOUT_RENDER_HPP_

#include <string>

#include "simout/figure.hpp"

namespace simout {

// SVG 1.1 documents and PGF (tikzpicture) fragments. Output bytes are a
// pure function of the figure: fixed number formatting, no timestamps.

std::string render_svg(const FigureGrid& grid);
std::string render_svg(const FigureDoc& fig);
void emit_svg(const FigureGrid& grid, const std::string& path);
void emit_svg(const FigureDoc& fig, const std::string& path);

std::string render_pgf(const FigureGrid& grid);
std::string render_pgf(const FigureDoc& fig);
void emit_pgf(const FigureGrid& grid, const std::string& path);
void emit_pgf(const FigureDoc& fig, const std::string& path);

}  // namespace simout

#endif  // SIMOUT_RENDER_HPP_
