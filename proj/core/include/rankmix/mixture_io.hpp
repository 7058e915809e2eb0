#pragma once

#include <iosfwd>
#include <string>

#include "rankmix/config.hpp"
#include "rankmix/generators.hpp"

namespace rankmix {

// Mixture spec file (key=value):
//   n=<items>  k=<components>  weights=<w0,w1,...>
//   component.<i>.family=mnl|gaussian|mallows
//   component.<i>.beta | .sigma | .phi=<noise>
//   component.<i>.utilities=<u0,u1,...>     (mnl, gaussian)
//   component.<i>.center=<item item ...>    (mallows, order by rank)
// `weights` may be omitted for equal weights.
MixtureSpec mixture_from_config(const KeyValueFile& file);
MixtureSpec read_mixture(std::istream& in, const std::string& source = "<stream>");
MixtureSpec read_mixture_file(const std::string& path);

void write_mixture(std::ostream& out, const MixtureSpec& spec);
void write_mixture_file(const std::string& path, const MixtureSpec& spec);

}  // namespace rankmix
