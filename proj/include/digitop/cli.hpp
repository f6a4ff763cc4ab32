#pragma once

// Command-line front end. run() parses one invocation, calls the matching
// library operation and prints a JSON verdict. Exit codes: 0 yes, 1 no,
// 2 usage or format error, 3 inconclusive.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "digitop/errors.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/io.hpp"
#include "digitop/lattice.hpp"
#include "digitop/maps.hpp"
#include "digitop/verdict.hpp"

namespace digitop::cli {

using nlohmann::json;

namespace detail {

inline Outcome yes_no(bool b) { return b ? Outcome::yes : Outcome::no; }

inline json index_points(const DigitalImage& img, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (std::size_t i : idx) out.push_back(io::to_json(img.point(i)));
  return out;
}

inline std::vector<Point> read_points(const std::string& path, const DigitalImage& img) {
  auto pts = io::points_from_json(io::read_json_file(path), static_cast<std::size_t>(img.spec().n()));
  for (const Point& p : pts) img.require_index(p);
  return pts;
}

inline json checks_to_json(const HomotopyChecks& c) {
  return json{{"endpoints", c.endpoints},
              {"stages_continuous", c.stages_continuous},
              {"tracks_continuous", c.tracks_continuous},
              {"rel_fixed", c.rel_fixed}};
}

inline std::optional<SearchBudget> budget_from_env(std::ostream& err) {
  SearchBudget b;
  if (const char* env = std::getenv("DIGITOP_BUDGET")) {
    const std::string text(env);
    const bool digits = !text.empty() && text.size() <= 18 &&
                        text.find_first_not_of("0123456789") == std::string::npos;
    const unsigned long long v = digits ? std::stoull(text) : 0;
    if (v == 0) {
      err << "error: DIGITOP_BUDGET must be a positive integer\n";
      return std::nullopt;
    }
    b.map_nodes = static_cast<std::size_t>(v);
    b.retractions = static_cast<std::size_t>(v);
  }
  return b;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"digitop: decision procedures for digital images"};
  app.name("digitop");
  app.require_subcommand(1);
  app.fallthrough();

  bool quiet = false;
  bool no_elapsed = false;
  auto* json_flag = app.add_flag("--json", "emit the JSON verdict (default)");
  app.add_flag("--quiet", quiet, "print only the outcome (or the k value)")->excludes(json_flag);
  app.add_flag("--no-elapsed", no_elapsed, "omit elapsed_ms from the verdict");

  const auto budget = detail::budget_from_env(err);
  if (!budget) return kUsageExitCode;

  std::function<Verdict()> action;
  std::string quiet_text;  // overrides the outcome word under --quiet

  // adjacency
  int adj_n = 0;
  int adj_t = 0;
  auto* adjacency = app.add_subcommand("adjacency", "k value of the k(t,n)-adjacency");
  adjacency->add_option("--n", adj_n, "dimension")->required();
  adjacency->add_option("--t", adj_t, "coordinate budget")->required();
  adjacency->callback([&] {
    action = [&] {
      const auto k = k_value(adj_t, adj_n);
      quiet_text = std::to_string(k);
      return Verdict{Outcome::yes, json{{"n", adj_n}, {"t", adj_t}, {"k", k}}};
    };
  });

  std::string image_file;
  std::vector<std::string> image_files;
  std::string map_file;
  std::vector<std::string> map_files;
  std::string homotopy_file;
  std::string rel_file;
  std::string point_text;
  std::size_t eps = 1;
  std::size_t max_steps = 4;
  std::string variant_name = "boxer";
  const std::vector<std::string> variants{"khalimsky", "boxer", "rel"};
  auto parse_variant = [&] {
    if (variant_name == "khalimsky") return HomotopyVariant::khalimsky;
    if (variant_name == "rel") return HomotopyVariant::rel;
    return HomotopyVariant::boxer;
  };

  // neighborhood
  auto* nbhd = app.add_subcommand("neighborhood", "intrinsic radius-eps neighborhood of a point");
  nbhd->add_option("--image", image_file, "image JSON")->required();
  nbhd->add_option("--point", point_text, "point \"c1,...,cn\"")->required();
  nbhd->add_option("--eps", eps, "radius (>= 1)");
  nbhd->callback([&] {
    action = [&] {
      const auto img = io::image_from_json(io::read_json_file(image_file));
      const Point p = io::parse_point(point_text);
      const auto pts = neighborhood(img, p, eps);
      return Verdict{Outcome::yes, json{{"point", io::to_json(p)},
                                        {"eps", eps},
                                        {"size", pts.size()},
                                        {"points", io::to_json(pts)}}};
    };
  });

  // connectivity
  auto* conn = app.add_subcommand("connectivity", "connected components of an image");
  conn->add_option("--image", image_file, "image JSON")->required();
  conn->callback([&] {
    action = [&] {
      const auto img = io::image_from_json(io::read_json_file(image_file));
      const auto comps = connected_components(img);
      json cj = json::array();
      for (const auto& c : comps) cj.push_back(io::to_json(c));
      const bool connected = comps.size() <= 1;
      return Verdict{detail::yes_no(connected),
                     json{{"connected", connected}, {"count", comps.size()}, {"components", cj}}};
    };
  });

  // sc-generate
  int sc_n = 2;
  int sc_t = 2;
  int sc_l = 4;
  auto* scgen = app.add_subcommand("sc-generate", "search for a simple closed curve with l points");
  scgen->add_option("--n", sc_n, "dimension")->required();
  scgen->add_option("--t", sc_t, "coordinate budget")->required();
  scgen->add_option("--l", sc_l, "number of points")->required();
  scgen->callback([&] {
    action = [&] {
      const json params{{"n", sc_n}, {"t", sc_t}, {"l", sc_l}};
      const auto img = generate_sc(sc_n, sc_t, sc_l);
      if (!img) {
        return Verdict{Outcome::inconclusive,
                       json{{"params", params}, {"reason", "bounded search found no curve"}}};
      }
      return Verdict{Outcome::yes, json{{"params", params},
                                        {"image", io::to_json(*img)},
                                        {"order", io::to_json(recognize_sc(*img)->points())}}};
    };
  });

  // sc-recognize
  auto* screc = app.add_subcommand("sc-recognize", "decide whether an image is a simple closed curve");
  screc->add_option("--image", image_file, "image JSON")->required();
  screc->callback([&] {
    action = [&] {
      const auto img = io::image_from_json(io::read_json_file(image_file));
      const auto curve = recognize_sc(img);
      if (!curve) return Verdict{Outcome::no, json{{"size", img.size()}}};
      return Verdict{Outcome::yes, json{{"l", curve->length()}, {"order", io::to_json(curve->points())}}};
    };
  });

  // check {continuity|iso|local-iso|r2-iso}
  auto* check = app.add_subcommand("check", "decide a map property");
  check->require_subcommand(1);
  auto load_map = [&] { return io::map_from_json(io::read_json_file(map_file)); };
  auto* c_cont = check->add_subcommand("continuity", "(k1,k2)-continuity");
  auto* c_iso = check->add_subcommand("iso", "(k1,k2)-isomorphism");
  auto* c_liso = check->add_subcommand("local-iso", "local (k1,k2)-isomorphism");
  auto* c_r2 = check->add_subcommand("r2-iso", "radius-2 local (k1,k2)-isomorphism");
  for (auto* c : {c_cont, c_iso, c_liso, c_r2}) c->add_option("--map", map_file, "map JSON")->required();
  c_cont->callback([&] {
    action = [&] {
      const auto f = load_map();
      json viol = json::array();
      for (const auto& [i, j] : continuity_violations(f)) {
        viol.push_back(json::array({io::to_json(f.domain().point(i)), io::to_json(f.domain().point(j))}));
      }
      return Verdict{detail::yes_no(viol.empty()), json{{"violations", viol}}};
    };
  });
  c_iso->callback([&] {
    action = [&] {
      const auto h = load_map();
      const auto inv = inverse(h);
      const bool cont = is_continuous(h);
      const bool inv_cont = inv && is_continuous(*inv);
      return Verdict{detail::yes_no(inv && cont && inv_cont),
                     json{{"bijective", inv.has_value()},
                          {"continuous", cont},
                          {"inverse_continuous", inv_cont}}};
    };
  });
  auto local = [&](std::size_t radius) {
    return [&, radius] {
      const auto h = load_map();
      const auto fails = local_isomorphism_failures(h, radius);
      return Verdict{detail::yes_no(fails.empty()),
                     json{{"eps", radius}, {"failures", detail::index_points(h.domain(), fails)}}};
    };
  };
  c_liso->callback([&] { action = local(1); });
  c_r2->callback([&] { action = local(2); });

  // example1
  std::size_t ex_l = 4;
  std::size_t ex_window = 24;
  auto* ex1 = app.add_subcommand("example1", "wrap a window of (Z,2) around an 8-curve in Z^2");
  ex1->add_option("--l", ex_l, "curve length")->required();
  ex1->add_option("--window", ex_window, "window [0, w]")->required();
  ex1->callback([&] {
    action = [&] {
      const auto r = windowed_example1_report(ex_l, ex_window);
      json pts = json::array();
      for (const auto& v : r.interior) {
        pts.push_back(json{{"t", v.t}, {"radius1", v.radius1}, {"radius2", v.radius2}});
      }
      return Verdict{detail::yes_no(r.radius2_all),
                     json{{"l", r.l},
                          {"window", json::array({r.window_min, r.window_max})},
                          {"curve", io::to_json(r.curve)},
                          {"interior", pts},
                          {"radius1_all", r.radius1_all},
                          {"radius2_all", r.radius2_all}}};
    };
  });

  // verify-homotopy
  auto* vh = app.add_subcommand("verify-homotopy", "check a homotopy document");
  vh->add_option("--homotopy", homotopy_file, "homotopy JSON")->required();
  vh->add_option("--variant", variant_name, "khalimsky | boxer | rel")
      ->check(CLI::IsMember(variants));
  vh->add_option("--rel", rel_file, "point list JSON of the fixed set");
  vh->callback([&] {
    action = [&] {
      const auto h = io::homotopy_from_json(io::read_json_file(homotopy_file));
      const auto variant = parse_variant();
      std::vector<Point> rel;
      if (!rel_file.empty()) rel = detail::read_points(rel_file, h.domain());
      const bool ok = verify(h, variant, rel);
      return Verdict{detail::yes_no(ok), json{{"variant", variant_name},
                                              {"m", h.steps()},
                                              {"checks", detail::checks_to_json(check_homotopy(h, rel))}}};
    };
  });

  // search-homotopy
  auto* sh = app.add_subcommand("search-homotopy", "bounded search for a homotopy f ~ g");
  sh->add_option("--map", map_files, "map JSON for f, then for g")->required()->expected(2);
  sh->add_option("--variant", variant_name, "khalimsky | boxer | rel")->check(CLI::IsMember(variants));
  sh->add_option("--rel", rel_file, "point list JSON of the fixed set");
  sh->add_option("--max-steps", max_steps, "largest m tried");
  sh->callback([&] {
    action = [&] {
      const auto f = io::map_from_json(io::read_json_file(map_files[0]));
      const auto g = io::map_from_json(io::read_json_file(map_files[1]));
      std::vector<Point> rel;
      if (!rel_file.empty()) rel = detail::read_points(rel_file, f.domain());
      const auto h = search_homotopy(f, g, max_steps, parse_variant(), rel, *budget);
      json d{{"variant", variant_name}, {"max_steps", max_steps}, {"found", h.has_value()}};
      if (h) d["homotopy"] = io::to_json(*h);
      return Verdict{detail::yes_no(h.has_value()), d};
    };
  });

  // contractible
  auto* con = app.add_subcommand("contractible", "pointed contractibility rel {x0}");
  con->add_option("--image", image_file, "image JSON")->required();
  con->add_option("--point", point_text, "base point \"c1,...,cn\"")->required();
  con->add_option("--max-steps", max_steps, "largest m tried");
  con->callback([&] {
    action = [&] {
      const auto img = io::image_from_json(io::read_json_file(image_file));
      const Point x0 = io::parse_point(point_text);
      const auto h = is_pointed_contractible(img, x0, max_steps, *budget);
      json d{{"point", io::to_json(x0)}, {"max_steps", max_steps}, {"found", h.has_value()}};
      if (h) d["homotopy"] = io::to_json(*h);
      return Verdict{detail::yes_no(h.has_value()), d};
    };
  });

  // retract
  auto* ret = app.add_subcommand("retract", "strong deformation retract certificate");
  ret->add_option("--image", image_file, "image JSON")->required();
  ret->add_option("--rel", rel_file, "point list JSON of the retained set")->required();
  ret->add_option("--max-steps", max_steps, "largest m tried");
  ret->callback([&] {
    action = [&] {
      const auto img = io::image_from_json(io::read_json_file(image_file));
      const auto kept = detail::read_points(rel_file, img);
      const auto cert = find_strong_deformation_retract(img, kept, max_steps, *budget);
      json d{{"max_steps", max_steps}, {"found", cert.has_value()}};
      if (cert) d["certificate"] = io::to_json(*cert);
      return Verdict{detail::yes_no(cert.has_value()), d};
    };
  });

  // thin
  auto* th = app.add_subcommand("thin", "homotopic thinning with per-deletion certificates");
  th->add_option("--image", image_file, "image JSON")->required();
  th->add_option("--max-steps", max_steps, "largest m tried per deletion");
  th->callback([&] {
    action = [&] {
      const auto img = io::image_from_json(io::read_json_file(image_file));
      const auto log = thin(img, max_steps, *budget);
      json steps = json::array();
      std::vector<Point> deleted;
      for (const auto& s : log.steps) {
        deleted.push_back(s.deleted);
        steps.push_back(json{{"deleted", io::to_json(s.deleted)}, {"certificate", io::to_json(s.certificate)}});
      }
      const bool certified = replay(log);
      return Verdict{detail::yes_no(certified), json{{"max_steps", max_steps},
                                                     {"deleted", io::to_json(deleted)},
                                                     {"result", io::to_json(log.result)},
                                                     {"certified", certified},
                                                     {"steps", steps}}};
    };
  });

  // equivalent
  auto* eq = app.add_subcommand("equivalent", "bounded search for a homotopy equivalence");
  eq->add_option("--image", image_files, "image JSON for X, then for Y")->required()->expected(2);
  eq->add_option("--max-steps", max_steps, "largest m tried per homotopy");
  eq->callback([&] {
    action = [&] {
      const auto x = io::image_from_json(io::read_json_file(image_files[0]));
      const auto y = io::image_from_json(io::read_json_file(image_files[1]));
      const auto w = are_homotopy_equivalent(x, y, max_steps, *budget);
      json d{{"max_steps", max_steps}, {"found", w.has_value()}};
      if (w) {
        d["f"] = io::to_json(w->f);
        d["g"] = io::to_json(w->g);
        d["gf_homotopy"] = io::to_json(w->gf_to_identity);
        d["fg_homotopy"] = io::to_json(w->fg_to_identity);
      }
      return Verdict{detail::yes_no(w.has_value()), d};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageExitCode;
  }
  if (!action) {
    err << "error: no subcommand given\n";
    return kUsageExitCode;
  }

  const auto start = std::chrono::steady_clock::now();
  Verdict v{Outcome::no};
  try {
    v = action();
  } catch (const CapacityError& e) {
    v = Verdict{Outcome::inconclusive, json{{"reason", e.what()}}};
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageExitCode;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageExitCode;
  }
  if (!no_elapsed) {
    v.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  }
  if (quiet) {
    out << (quiet_text.empty() ? to_string(v.outcome) : quiet_text) << "\n";
  } else {
    out << v.to_json().dump(2) << "\n";
  }
  return exit_code(v.outcome);
}

}  // namespace digitop::cli
