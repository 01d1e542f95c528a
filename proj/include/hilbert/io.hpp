#pragma once

#include "hilbert/convergence.hpp"
#include "hilbert/convex_body.hpp"
#include "hilbert/horoboundary.hpp"
#include "hilbert/polar.hpp"

#include <json.hpp>

#include <string>

namespace hilbert::io {

using json = nlohmann::ordered_json;

//! {"type":"polytope"|"ball"|"intersection", ...}; throws DomainError on malformed input
ConvexBody body_from_json(const json& j, double tol = kDefaultGeoTol);
ConvexBody load_body(const std::string& path, double tol = kDefaultGeoTol);

//! Comma- or space-separated coordinates
Point parse_point(const std::string& text);

json to_json(const Vector& v);
Vector vector_from_json(const json& j);

json to_json(const BusemannDescriptor& d);

//! Reads {"z", "chain", "p", "basepoint"} against a given cone. Points of
//! dimension cone.dim() − 1 are lifted to height 1.
BusemannDescriptor descriptor_from_json(const json& j, const PolyCone& cone, const Point& basepoint);

json to_json(const CatalogFamily& f);
json to_json(const ConvergenceReport& r);
json to_json(const NonclosednessReport& r);
json to_json(const Example2Report& r);

//! %.17g
std::string format_double(double v);

//! x0,...,x{d−1},value
std::string to_csv(const SampledFunction& f);

}  // namespace hilbert::io
