#pragma once

#include "hilbert/convex_body.hpp"

#include <string>
#include <vector>

namespace hilbert {

/// Built-in bodies: disk, square, triangle, cube, segment, example2, example4d.
ConvexBody fixture_body(const std::string& name, double tol = kDefaultGeoTol);

std::vector<std::string> fixture_names();

//! Default basepoint of a fixture (the origin for all of them)
Point fixture_basepoint(const std::string& name);

//! {|x| + |z| <= 1} ∩ {x² + y² <= 1}
ConvexBody example2_body(double tol = kDefaultGeoTol);

//! {|(x1, x2)| + |x3| <= 1} ∩ {|x1| + |(x3, x4)| <= 1}
ConvexBody example4d_body(double tol = kDefaultGeoTol);

}  // namespace hilbert
