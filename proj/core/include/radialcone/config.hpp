#ifndef RADIALCONE_CONFIG_HPP
#define RADIALCONE_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

namespace radialcone {

/// Run configuration, one TOML-style file with key/value sections. Parsing
/// rejects unknown keys with their line number; serialization materializes
/// every default so outputs are self-contained, and round-trips losslessly.
struct RunConfig {
  struct Model {
    int n = 3;
    double alpha = 4.0;
    std::string profile = "adkins_nappi";
    std::optional<double> exponent; // for the power profile
    bool operator==(const Model&) const = default;
  };
  struct Grid {
    double R = 4.0;
    std::optional<double> h;
    std::optional<int> cells;
    double resolved_h() const;
    bool operator==(const Grid&) const = default;
  };
  struct Solver {
    double cfl = 0.5;
    double t0 = 0.0;
    double t_end = 2.0;
    int snapshot_stride = 8;
    std::optional<double> blowup_threshold; // default 50 sup|u0| + 10, resolved at run time
    bool operator==(const Solver&) const = default;
  };
  struct Data {
    std::string family = "bump"; // bump | zero
    double amplitude = 1e-3;
    double center = 1.0;
    double width = 0.2;
    std::string v_mode = "zero"; // zero | outgoing
    bool operator==(const Data&) const = default;
  };
  struct Diagnostics {
    std::optional<double> apex; // lab time of the cone apex, default t_end
    std::vector<double> region_S{0.25};
    std::vector<double> region_T{1.0};
    double dyadic_t0 = 1.0;
    int dyadic_count = 5;
    std::vector<double> lemma_scales{0.75, 0.375, 0.1875, 0.09375};
    double energy_flux_rel_tol = 1e-2;
    bool operator==(const Diagnostics&) const = default;
  };
  struct Output {
    std::string directory = "out";
    bool write_series = true;
    bool write_slices = true;
    bool operator==(const Output&) const = default;
  };
  struct Mms {
    std::vector<double> h_levels{1.0 / 128, 1.0 / 256, 1.0 / 512};
    double R = 2.5;
    double t0 = 0.0;
    double t_end = 0.25;
    double cfl = 0.5;
    double amplitude = 0.1;
    double omega = 1.0;
    double order_min = 1.8;
    double order_max = 2.2;
    std::string origin_closure = "odd"; // "even" is the regression hook
    bool operator==(const Mms&) const = default;
  };
  struct Sweep {
    std::vector<double> amplitude;
    std::vector<int> n;
    std::vector<double> alpha;
    std::vector<std::string> profile;
    bool operator==(const Sweep&) const = default;
  };

  Model model;
  Grid grid;
  Solver solver;
  Data data;
  Diagnostics diagnostics;
  Output output;
  Mms mms;
  Sweep sweep;

  bool operator==(const RunConfig&) const = default;

  void validate() const; // throws ConfigError on semantic problems

  static RunConfig parse_string(const std::string& text);
  static RunConfig parse_file(const std::string& path);
  std::string serialize() const;
};

} // namespace radialcone

#endif
