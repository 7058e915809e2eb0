#include "rankmix/mixture_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "rankmix/error.hpp"
#include "rankmix/matrix_io.hpp"

namespace rankmix {

namespace {

const char* noise_key(Family family) {
  switch (family) {
    case Family::kMnl: return "beta";
    case Family::kGaussian: return "sigma";
    case Family::kMallows: return "phi";
  }
  return "noise";
}

}  // namespace

MixtureSpec mixture_from_config(const KeyValueFile& file) {
  const auto n = static_cast<std::size_t>(file.get_uint("n"));
  const auto k = static_cast<std::size_t>(file.get_uint("k"));
  if (n < 2) throw ParseError(file.source() + ": n must be at least 2");
  if (k < 1) throw ParseError(file.source() + ": k must be at least 1");

  MixtureSpec spec;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string prefix = "component." + std::to_string(i) + ".";
    ComponentSpec c;
    try {
      c.family = parse_family(file.get(prefix + "family"));
    } catch (const std::invalid_argument& e) {
      throw ParseError(file.source() + ": " + prefix + "family: " + e.what());
    }
    c.noise = file.get_double(prefix + noise_key(c.family));
    if (c.family == Family::kMallows) {
      const auto items = parse_double_list(file.get(prefix + "center"), ' ', prefix + "center");
      std::vector<Item> order;
      for (double v : items) {
        if (v < 0 || v != static_cast<double>(static_cast<Item>(v))) {
          throw ParseError(file.source() + ": " + prefix + "center must list item indices");
        }
        order.push_back(static_cast<Item>(v));
      }
      try {
        c.center = Permutation::from_order(std::move(order));
      } catch (const std::invalid_argument& e) {
        throw ParseError(file.source() + ": " + prefix + "center: " + e.what());
      }
    } else {
      c.utilities = file.get_doubles(prefix + "utilities");
    }
    if (c.items() != n) {
      throw ParseError(file.source() + ": " + prefix + " has " + std::to_string(c.items()) +
                       " items, expected n=" + std::to_string(n));
    }
    spec.components.push_back(std::move(c));
  }
  spec.weights = file.contains("weights")
                     ? file.get_doubles("weights")
                     : std::vector<double>(k, 1.0 / static_cast<double>(k));
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(file.source() + ": " + e.what());
  }
  return spec;
}

MixtureSpec read_mixture(std::istream& in, const std::string& source) {
  return mixture_from_config(KeyValueFile::parse(in, source));
}

MixtureSpec read_mixture_file(const std::string& path) {
  return mixture_from_config(KeyValueFile::load(path));
}

void write_mixture(std::ostream& out, const MixtureSpec& spec) {
  spec.validate();
  std::ostringstream body;
  body << "n=" << spec.items() << '\n' << "k=" << spec.size() << '\n' << "weights=";
  for (std::size_t i = 0; i < spec.weights.size(); ++i) body << (i ? "," : "") << format_real(spec.weights[i]);
  body << '\n';
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& c = spec.components[i];
    const std::string prefix = "component." + std::to_string(i) + ".";
    body << prefix << "family=" << to_string(c.family) << '\n';
    body << prefix << noise_key(c.family) << '=' << format_real(c.noise) << '\n';
    if (c.family == Family::kMallows) {
      body << prefix << "center=";
      for (std::size_t r = 0; r < c.center->size(); ++r) body << (r ? " " : "") << c.center->item_at(r);
    } else {
      body << prefix << "utilities=";
      for (std::size_t a = 0; a < c.utilities.size(); ++a) body << (a ? "," : "") << format_real(c.utilities[a]);
    }
    body << '\n';
  }
  out << body.str();
}

void write_mixture_file(const std::string& path, const MixtureSpec& spec) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  write_mixture(out, spec);
  if (!out) throw IoError(path, "write failed");
}

}  // namespace rankmix
