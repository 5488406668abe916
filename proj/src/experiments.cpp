#include "marscolony/experiments.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace marscolony {
namespace {

int parse_int(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

ReplicateOutcome run_replicate(const SimConfig& config, std::uint64_t seed, const SweepSpec& spec) {
  ReplicateOutcome out;
  out.seed = seed;
  try {
    const RunResult result = run(config, seed);
    out.population = result.population_series();
    out.final_report = result.final_report();
    out.stable = classify_stability(out.population, config.stability_threshold,
                                    config.bounce_back_window);
    if (spec.out_dir) write_run_files(result, *spec.out_dir);
  } catch (const ConfigError& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

bool classify_stability(std::span<const int> series, int threshold, int window) {
  if (series.empty()) return false;
  int run_length = 0;
  for (int population : series) {
    run_length = population < threshold ? run_length + 1 : 0;
    if (run_length > window) return false;
  }
  return series.back() >= threshold;
}

bool majority(const std::vector<bool>& votes) {
  const auto yes = std::count(votes.begin(), votes.end(), true);
  return 2 * static_cast<std::size_t>(yes) > votes.size();
}

std::vector<int> parse_population_list(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(parse_int(std::string_view(text).substr(start, colon - start)));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3) throw std::invalid_argument("range must be start:stop:step");
    const int first = parts[0], last = parts[1], step = parts[2];
    if (step <= 0) throw std::invalid_argument("range step must be positive");
    if (last < first) throw std::invalid_argument("range stop is below start");
    for (int v = first; v <= last; v += step) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_int(std::string_view(text).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<bool> StabilityVerdict::votes() const {
  std::vector<bool> v;
  for (const auto& r : replicates) v.push_back(r.stable);
  return v;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) job(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<StabilityVerdict> run_sweep(const SweepSpec& spec) {
  if (spec.populations.empty()) throw std::invalid_argument("sweep needs at least one population");
  if (spec.replicates < 1) throw std::invalid_argument("sweep needs at least one replicate");

  const std::size_t reps = static_cast<std::size_t>(spec.replicates);
  std::vector<ReplicateOutcome> cells(spec.populations.size() * reps);
  parallel_for(cells.size(), spec.jobs, [&](std::size_t i) {
    SimConfig config = spec.base;
    config.initial_population = spec.populations[i / reps];
    cells[i] = run_replicate(config, spec.base_seed + i % reps, spec);
  });

  std::vector<StabilityVerdict> verdicts;
  for (std::size_t p = 0; p < spec.populations.size(); ++p) {
    StabilityVerdict v;
    v.initial_population = spec.populations[p];
    for (std::size_t r = 0; r < reps; ++r) {
      ReplicateOutcome& cell = cells[p * reps + r];
      if (!cell.error.empty() && v.error.empty()) v.error = cell.error;
      v.replicates.push_back(std::move(cell));
    }
    const auto votes = v.votes();
    v.aggregate = v.error.empty() && majority(votes);
    verdicts.push_back(std::move(v));
  }

  if (spec.out_dir && spec.emit_plots) {
    std::filesystem::create_directories(*spec.out_dir);
    for (const auto& v : verdicts) {
      const auto path = *spec.out_dir / ("population_" + std::to_string(v.initial_population) + ".svg");
      std::ofstream svg(path);
      if (!svg) throw std::runtime_error("cannot write " + path.string());
      write_population_svg(svg, v, spec.base.stability_threshold);
    }
  }
  return verdicts;
}

std::optional<int> min_stable_population(std::span<const StabilityVerdict> verdicts) {
  std::optional<int> best;
  for (const auto& v : verdicts) {
    if (v.aggregate && (!best || v.initial_population < *best)) best = v.initial_population;
  }
  return best;
}

void write_summary_csv(std::ostream& out, std::span<const StabilityVerdict> verdicts) {
  std::size_t reps = 0;
  for (const auto& v : verdicts) reps = std::max(reps, v.replicates.size());
  out << "initial_population";
  for (std::size_t r = 0; r < reps; ++r) out << ",run_" << (r + 1);
  out << ",aggregate\n";
  for (const auto& v : verdicts) {
    out << v.initial_population;
    for (std::size_t r = 0; r < reps; ++r) {
      out << ',';
      if (r >= v.replicates.size()) continue;
      const auto& rep = v.replicates[r];
      out << (!rep.error.empty() ? "error" : rep.stable ? "bounce_back" : "no_bounce_back");
    }
    if (!v.error.empty()) {
      std::string msg = v.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << ",error: " << msg << '\n';
    } else {
      out << ',' << (v.aggregate ? "Successful Bounce Back" : "No Bounce Back") << '\n';
    }
  }
}

void write_population_svg(std::ostream& out, const StabilityVerdict& verdict, int threshold) {
  constexpr double kWidth = 800, kHeight = 400, kMargin = 40;
  std::size_t ticks = 1;
  int peak = std::max(threshold, 1);
  for (const auto& r : verdict.replicates) {
    ticks = std::max(ticks, r.population.size());
    for (int p : r.population) peak = std::max(peak, p);
  }
  auto x_of = [&](std::size_t t) { return kMargin + (kWidth - 2 * kMargin) * t / double(ticks); };
  auto y_of = [&](double p) { return kHeight - kMargin - (kHeight - 2 * kMargin) * p / peak; };

  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n";
  out << "<text x=\"" << kMargin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">"
      << "initial population " << verdict.initial_population << "</text>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << y_of(threshold) << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << y_of(threshold)
      << "\" stroke=\"black\" stroke-dasharray=\"4 4\"/>\n";
  for (std::size_t r = 0; r < verdict.replicates.size(); ++r) {
    const auto& series = verdict.replicates[r].population;
    if (series.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << kColors[r % 8] << "\" points=\"";
    for (std::size_t t = 0; t < series.size(); ++t) {
      out << x_of(t) << ',' << y_of(series[t]) << (t + 1 < series.size() ? " " : "");
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

// ---------------------------------------------------------------------------

CalibrationEvidence gather_evidence(const SimConfig& config, const EvidencePlan& plan) {
  CalibrationEvidence ev;

  SweepSpec small;
  small.populations = plan.small_populations;
  small.replicates = plan.replicates;
  small.base_seed = plan.base_seed;
  small.base = config;
  small.jobs = plan.jobs;
  ev.small_sweep = run_sweep(small);
  ev.min_stable = min_stable_population(ev.small_sweep);

  SweepSpec large = small;
  large.populations = plan.large_populations;
  ev.large_sweep = run_sweep(large);
  std::size_t stable = 0, total = 0;
  for (const auto& v : ev.large_sweep) {
    for (const auto& r : v.replicates) {
      ++total;
      stable += r.stable ? 1 : 0;
    }
  }
  ev.large_stable_fraction = total ? double(stable) / double(total) : 0.0;

  SweepSpec ordering = small;
  ordering.populations = {plan.ordering_population};
  ordering.replicates = plan.ordering_replicates;
  const auto ordered = run_sweep(ordering);
  std::size_t wins = 0, runs = 0;
  for (const auto& r : ordered.front().replicates) {
    ++runs;
    const auto& f = r.final_report;
    if (f.count(ResilienceCategory::Agreeable) > f.count(ResilienceCategory::Neurotic)) ++wins;
  }
  ev.agreeable_outlives_fraction = runs ? double(wins) / double(runs) : 0.0;
  return ev;
}

std::vector<CalibrationTarget> default_targets() {
  return {
      {"large_colonies_stable",
       [](const CalibrationEvidence& e) { return e.large_stable_fraction >= 0.9; }},
      {"agreeable_outlives_neurotic",
       [](const CalibrationEvidence& e) { return e.agreeable_outlives_fraction >= 0.8; }},
      {"min_stable_in_band",
       [](const CalibrationEvidence& e) {
         return e.min_stable && *e.min_stable >= 18 && *e.min_stable <= 34;
       }},
  };
}

std::size_t KnobGrid::size() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& [_, values] : axes) n *= values.size();
  return n;
}

std::vector<std::pair<std::string, double>> KnobGrid::point(std::size_t index) const {
  std::vector<std::pair<std::string, double>> out;
  // Last axis varies fastest.
  std::vector<std::size_t> digits(axes.size());
  for (std::size_t a = axes.size(); a-- > 0;) {
    digits[a] = index % axes[a].second.size();
    index /= axes[a].second.size();
  }
  for (std::size_t a = 0; a < axes.size(); ++a) out.emplace_back(axes[a].first, axes[a].second[digits[a]]);
  return out;
}

KnobGrid knob_grid_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("", "knob grid must be an object of knob: [values]");
  KnobGrid grid;
  for (const auto& [key, values] : doc.items()) {
    if (!values.is_array()) throw ConfigError(key, "expected an array of values");
    std::vector<double> axis;
    for (const auto& v : values) {
      if (!v.is_number()) throw ConfigError(key, "grid values must be numbers");
      axis.push_back(v.get<double>());
    }
    grid.axes.emplace_back(key, std::move(axis));
  }
  return grid;
}

std::vector<ScoredConfig> calibrate(const SimConfig& base, const KnobGrid& grid,
                                    std::span<const CalibrationTarget> targets,
                                    const EvidencePlan& plan) {
  if (grid.axes.empty() || grid.size() == 0) throw std::invalid_argument("calibration grid is empty");
  for (const auto& [key, values] : grid.axes) {
    SimConfig probe = base;
    set_knob(probe, key, values.empty() ? 0.0 : values.front());
  }

  std::vector<ScoredConfig> scored;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ScoredConfig sc;
    sc.grid_index = i;
    sc.knobs = grid.point(i);
    sc.config = base;
    for (const auto& [key, value] : sc.knobs) set_knob(sc.config, key, value);
    sc.passed.assign(targets.size(), false);
    try {
      validate(sc.config);
      const CalibrationEvidence ev = gather_evidence(sc.config, plan);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        sc.passed[t] = targets[t].satisfied(ev);
        sc.score += sc.passed[t] ? 1 : 0;
      }
      sc.large_stable_fraction = ev.large_stable_fraction;
      sc.agreeable_outlives_fraction = ev.agreeable_outlives_fraction;
      sc.min_stable = ev.min_stable;
    } catch (const ConfigError& e) {
      sc.error = e.what();
    }
    scored.push_back(std::move(sc));
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredConfig& a, const ScoredConfig& b) { return a.score > b.score; });
  return scored;
}

void write_calibration_csv(std::ostream& out, std::span<const ScoredConfig> ranked,
                           std::span<const CalibrationTarget> targets) {
  out << "rank,grid_index,score";
  if (!ranked.empty()) {
    for (const auto& [key, _] : ranked.front().knobs) out << ',' << key;
  }
  for (const auto& t : targets) out << ',' << t.name;
  out << ",large_stable_fraction,agreeable_outlives_fraction,min_stable,error\n";
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    const auto& sc = ranked[r];
    out << (r + 1) << ',' << sc.grid_index << ',' << sc.score;
    for (const auto& [_, value] : sc.knobs) out << ',' << value;
    for (bool p : sc.passed) out << ',' << (p ? "pass" : "fail");
    out << ',' << sc.large_stable_fraction << ',' << sc.agreeable_outlives_fraction << ',';
    if (sc.min_stable) out << *sc.min_stable;
    std::string err = sc.error;
    std::replace(err.begin(), err.end(), ',', ';');
    out << ',' << err << '\n';
  }
}

}  // namespace marscolony
