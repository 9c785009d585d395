#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amoeba/degeneration.hpp"
#include "amoeba/polytope.hpp"
#include "amoeba/raster.hpp"
#include "amoeba/ronkin.hpp"
#include "amoeba/tropical.hpp"

namespace amoeba::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

Json to_json(const LatticePoint& p);
Json to_json(const Eigen::VectorXd& v);
Json to_json(const Box2D& box);
Json to_json(const NewtonPolytope& polytope);
Json to_json(const Lifting& lifting);
Json to_json(const Subdivision& subdivision);
Json to_json(const PolyhedralComplex& complex);
Json to_json(const ComplementComponent& component);
Json to_json(const SolidityReport& report);
Json to_json(const BoundCheckReport& report);
Json to_json(const ConvergenceReport& report);
Json to_json(const SubdivisionSweepReport& report);
Json to_json(const SolidnessSweepReport& report);

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// One line per pixel: i,j,x1,x2,verdict,samples,certificate.
void write_raster_csv(std::ostream& os, const AmoebaRaster& raster);

inline constexpr double kSvgPixelsPerUnit = 64.0;

/// Amoeba pixels in one fill, bounded complement components highlighted,
/// optional spine overlay. x to the right, y up.
void write_raster_svg(std::ostream& os, const AmoebaRaster& raster, const std::vector<ComplementComponent>& components,
                      const PolyhedralComplex* spine = nullptr, double scale = kSvgPixelsPerUnit);

/// Corner locus drawn over `view`; rays are clipped to the view.
void write_complex_svg(std::ostream& os, const PolyhedralComplex& complex, const Box2D& view,
                       double scale = kSvgPixelsPerUnit);

/// Subdivision cells over the outline of the polytope.
void write_subdivision_svg(std::ostream& os, const Subdivision& subdivision, const NewtonPolytope& polytope,
                           double scale = kSvgPixelsPerUnit);

}  // namespace amoeba::io
