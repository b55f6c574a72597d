#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "schauder/grid.hpp"
#include "schauder/halfsphere.hpp"

namespace schauder {

/// CSV with header x1,...,xn,t,value; one row per sample, any order. The
/// samples must fill a uniform product grid. Throws IoError.
GridFunction read_grid_csv(std::istream& in);
GridFunction read_grid_csv_file(const std::string& path);

void write_grid_csv(std::ostream& out, const GridFunction& u);

/// "1,2,4" -> {1, 2, 4}. Throws InvalidArgument.
std::vector<double> parse_number_list(std::string_view text);

/// Field descriptors:
///   zero
///   single:l=2,m=0[,c=1.5]
///   random:seed=3      N(0,1) coefficients
///   perp:seed=3        random with the (0,0), (1,+-1) modes removed
///   coeffs:l=2,m=0,c=1;l=3,m=1,c=-0.5
SpectralField parse_field_descriptor(std::string_view text, const BasisPtr& basis);

}  // namespace schauder
