#include "hmetric/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "hmetric/discrete.hpp"
#include "hmetric/errors.hpp"
#include "hmetric/factor.hpp"
#include "hmetric/fixpoint.hpp"
#include "hmetric/forms.hpp"
#include "hmetric/space_io.hpp"

namespace hmetric {

namespace {

using Json = nlohmann::ordered_json;

/// Wrong arguments detected after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  std::ostream& out;
  bool json = false;

  void emit(const Json& j) const { out << j.dump(2) << '\n'; }
  void line(const std::string& s) const { out << s << '\n'; }
};

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) (s += i ? sep : "") += parts[i];
  return s;
}

// ---- inputs -----------------------------------------------------------------

std::shared_ptr<const FiniteAlgebra> finite_algebra(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return std::make_shared<const FiniteAlgebra>(load_algebra_file(spec));
  return std::make_shared<const FiniteAlgebra>(make_builtin_from_spec(spec));
}

Alphabet alphabet_from(const std::string& decl) {
  return decl.empty() ? Alphabet::signed_pair() : Alphabet::parse(decl);
}

template <ValueAlgebra A>
Json space_json(const MetricSpace<A>& sp) {
  Json j;
  j["algebra"] = sp.algebra().name();
  if constexpr (std::is_same_v<A, WordAlgebra>) j["alphabet"] = sp.algebra().alphabet().declaration();
  j["points"] = sp.points();
  Json rows = Json::array();
  for (std::size_t x = 0; x < sp.size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < sp.size(); ++y) row.push_back(sp.algebra().render(sp.d(x, y)));
    rows.push_back(std::move(row));
  }
  j["d"] = std::move(rows);
  return j;
}

/// Reads the JSON form written by `space_json` by way of the text format.
AnySpace space_from_json(const std::string& text, const std::string& source, const std::string& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(source, line, "malformed JSON space");
  }
  try {
    std::ostringstream t;
    t << "space over " << j.at("algebra").get<std::string>() << '\n';
    if (j.contains("alphabet")) t << j["alphabet"].get<std::string>() << '\n';
    const auto points = j.at("points").get<std::vector<std::string>>();
    t << "points " << join(points) << '\n';
    const auto& rows = j.at("d");
    for (std::size_t x = 0; x < points.size(); ++x)
      for (std::size_t y = 0; y < points.size(); ++y)
        if (x != y)
          t << "d " << points[x] << ' ' << points[y] << ' ' << rows.at(x).at(y).get<std::string>() << '\n';
    std::istringstream in(t.str());
    return parse_space(in, source, base_dir);
  } catch (const Json::exception& e) {
    throw ParseError(source, 1, std::string("JSON space: ") + e.what());
  }
}

AnySpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::string text(std::istreambuf_iterator<char>(in), {});
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return load_space_file(path);
  auto dir = std::filesystem::path(path).parent_path().string();
  return space_from_json(text, path, dir.empty() ? "." : dir);
}

const FiniteSpace& finite_only(const AnySpace& sp, const std::string& verb) {
  if (const auto* f = std::get_if<FiniteSpace>(&sp)) return *f;
  throw Refusal(verb + " needs a space over a finite algebra", {"words"});
}

template <ValueAlgebra A>
PointSet subset_of(const MetricSpace<A>& sp, const std::vector<std::string>& names) {
  PointSet s(sp.size());
  for (const auto& n : names) s.set(sp.index_of(n));
  return s;
}

template <class S>
std::vector<std::string> names_of(const S& sp, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(sp.point(i));
  return out;
}

std::vector<std::string> names_of(const Poset& p, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(p.elements[i]);
  return out;
}

std::vector<std::string> labels_of(const FiniteAlgebra& alg, const std::vector<Elem>& es) {
  std::vector<std::string> out;
  for (auto e : es) out.push_back(alg.label(e));
  return out;
}

Radii parse_radii(const FiniteSpace& sp, const std::vector<std::string>& text) {
  if (text.size() != sp.size())
    throw UsageError("expected " + std::to_string(sp.size()) + " radii, got " + std::to_string(text.size()));
  Radii h;
  for (const auto& t : text) {
    auto e = sp.algebra().find(t);
    if (!e) throw UsageError("unknown value '" + t + "' in " + sp.algebra().name());
    h.push_back(*e);
  }
  return h;
}

// ---- outputs ----------------------------------------------------------------

template <ValueAlgebra A>
void emit_space(const Output& o, const MetricSpace<A>& sp) {
  if (o.json)
    o.emit(space_json(sp));
  else
    o.out << write_space(sp);
}

/// A whole distance space, or one entry when two point names are given.
template <ValueAlgebra A>
void emit_space_or_entry(const Output& o, const MetricSpace<A>& sp, const std::vector<std::string>& pair) {
  if (pair.empty()) return emit_space(o, sp);
  if (pair.size() != 2) throw UsageError("expected two point names");
  const auto v = sp.algebra().render(sp.d(sp.index_of(pair[0]), sp.index_of(pair[1])));
  if (o.json)
    o.emit(Json{{"x", pair[0]}, {"y", pair[1]}, {"d", v}});
  else
    o.line(v);
}

void emit_fixed(const Output& o, const std::vector<std::string>& point, const std::vector<std::string>& fixed) {
  if (o.json) {
    o.emit(Json{{"point", point.front()}, {"fixed", fixed}});
  } else {
    o.line("fixed point: " + point.front());
    o.line("fixed set: " + join(fixed));
  }
}

// ---- verbs --------------------------------------------------------------------

struct Args {
  std::string file, algebra, alphabet, antichain, value, map, to;
  std::vector<std::string> files, names, radii, subset;
  std::size_t bound = 3;
  int k = 6;
  bool dot = false;
  std::string start;
};

void verb_laws(const Output& o, const Args& a) {
  auto alg = finite_algebra(a.algebra);
  auto rep = validate_laws(*alg);
  if (o.json) {
    Json v = Json::array();
    for (const auto& x : rep.violations) v.push_back(Json{{"law", x.law}, {"witness", labels_of(*alg, x.witness)}});
    o.emit(Json{{"algebra", alg->name()}, {"elements", alg->size()}, {"passed", rep.passed}, {"violations", v}});
    return;
  }
  o.line(rep.passed ? "passed" : "failed");
  for (const auto& x : rep.violations) o.line(x.law + ": " + join(labels_of(*alg, x.witness)));
}

void verb_dist(const Output& o, const Args& a) {
  if (a.algebra == "words") {
    if (a.names.size() != 2) throw UsageError("dist over words expects two antichains");
    WordAlgebra wa(alphabet_from(a.alphabet));
    auto d = wa.render(wa.distance(wa.parse(a.names[0]), wa.parse(a.names[1])));
    if (o.json)
      o.emit(Json{{"p", a.names[0]}, {"q", a.names[1]}, {"d", d}});
    else
      o.line(d);
    return;
  }
  auto alg = finite_algebra(a.algebra);
  auto value = [&](const std::string& t) {
    auto e = alg->find(t);
    if (!e) throw UsageError("unknown value '" + t + "' in " + alg->name());
    return *e;
  };
  if (a.names.size() == 2) {
    auto d = alg->label(alg->distance(value(a.names[0]), value(a.names[1])));
    if (o.json)
      o.emit(Json{{"p", a.names[0]}, {"q", a.names[1]}, {"d", d}});
    else
      o.line(d);
    return;
  }
  if (!a.names.empty()) throw UsageError("dist expects two values or none");
  Json table = Json::array();
  for (auto p : alg->elements())
    for (auto q : alg->elements()) {
      auto d = alg->label(alg->distance(p, q));
      if (o.json)
        table.push_back(Json{{"p", alg->label(p)}, {"q", alg->label(q)}, {"d", d}});
      else
        o.line(alg->label(p) + " " + alg->label(q) + " " + d);
    }
  if (o.json) o.emit(Json{{"algebra", alg->name()}, {"table", table}});
}

void verb_embed(const Output& o, const Args& a) {
  std::visit(
      [&](const auto& sp) {
        auto e = canonical_embed(sp);
        Json pts = Json::array();
        for (std::size_t x = 0; x < sp.size(); ++x) {
          std::vector<std::string> v;
          for (const auto& c : e.coords[x]) v.push_back(sp.algebra().render(c));
          if (o.json)
            pts.push_back(Json{{"point", sp.point(x)}, {"vector", v}});
          else
            o.line(sp.point(x) + " " + e.image.point(x));
        }
        if (o.json) o.emit(Json{{"points", pts}});
      },
      load_space(a.file));
}

void verb_hyperconvex(const Output& o, const Args& a) {
  std::optional<FiniteSpace> owned;
  if (!a.file.empty())
    owned = finite_only(load_space(a.file), "hyperconvex");
  else if (!a.algebra.empty())
    owned = value_space(finite_algebra(a.algebra));
  else
    throw UsageError("hyperconvex expects a space file or --algebra");
  const auto& sp = *owned;
  auto rep = hyperconvexity(sp);
  auto pts = names_of(sp, rep.points);
  auto witness = labels_of(sp.algebra(), rep.witness);
  if (o.json) {
    Json j{{"hyperconvex", rep.hyperconvex}};
    if (!rep.hyperconvex) {
      j["failed"] = rep.failed;
      j["points"] = pts;
      j["witness"] = witness;
    }
    o.emit(j);
  } else if (rep.hyperconvex) {
    o.line("hyperconvex");
  } else {
    o.line("not hyperconvex: " + rep.failed + " at " + join(pts) + " radii " + join(witness));
  }
}

void verb_envelope(const Output& o, const Args& a) {
  if (!a.antichain.empty()) {
    auto alg = std::make_shared<const WordAlgebra>(alphabet_from(a.alphabet));
    return emit_space(o, two_point_envelope(alg, alg->parse(a.antichain)));
  }
  if (!a.value.empty()) {
    if (a.algebra.empty()) throw UsageError("--value needs --algebra");
    auto alg = finite_algebra(a.algebra);
    auto v = alg->find(a.value);
    if (!v) throw UsageError("unknown value '" + a.value + "' in " + alg->name());
    return emit_space(o, two_point_envelope(alg, *v));
  }
  if (a.file.empty()) throw UsageError("envelope expects a space file, --value or --antichain");
  emit_space(o, injective_envelope(finite_only(load_space(a.file), "envelope")).space);
}

void verb_replete(const Output& o, const Args& a) {
  emit_space(o, replete_space(finite_only(load_space(a.file), "replete")).space);
}

void verb_zigzag(const Output& o, const Args& a) {
  auto g = load_digraph_file(a.file);
  if (a.dot) return o.line(to_dot(g));
  emit_space_or_entry(o, zigzag_space(g), a.names);
}

void verb_fence(const Output& o, const Args& a) {
  auto p = load_poset_file(a.file);
  if (a.dot) return o.line(to_dot(p));
  emit_space_or_entry(o, fence_space(p, a.k), a.names);
}

void verb_graphic(const Output& o, const Args& a) {
  auto g = load_digraph_file(a.file);
  if (a.dot) return o.line(to_dot(g));
  emit_space_or_entry(o, graphic_distance(g, a.k), a.names);
}

void verb_ts(const Output& o, const Args& a) { emit_space_or_entry(o, ts_space(load_ts_file(a.file)), a.names); }

void verb_connexity(const Output& o, const Args& a) {
  auto any = load_space(a.file);
  const auto* sp = std::get_if<WordSpace>(&any);
  if (!sp) throw Refusal("connexity needs a space over words", {std::get<FiniteSpace>(any).algebra().name()});
  auto rep = check_connexity(*sp);
  const auto& alph = sp->algebra().alphabet();
  if (a.dot && rep.holds) return o.line(to_dot(*rep.graph));
  if (o.json) {
    Json j{{"holds", rep.holds}};
    if (rep.holds) {
      Json arcs = Json::array();
      const auto& g = *rep.graph;
      for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
          if (x != y && g.has_arc(x, y)) arcs.push_back({g.vertices[x], g.vertices[y]});
      j["arcs"] = arcs;
    } else {
      j["x"] = sp->point(rep.x);
      j["y"] = sp->point(rep.y);
      j["word"] = render_word(alph, rep.word);
      j["split"] = rep.split;
    }
    return o.emit(j);
  }
  if (rep.holds) return o.line("holds");
  o.line("fails at " + sp->point(rep.x) + " " + sp->point(rep.y) + " word " + render_word(alph, rep.word) +
         " split " + std::to_string(rep.split));
}

void verb_factor(const Output& o, const Args& a) {
  const auto alph = alphabet_from(a.alphabet);
  auto f = factorize(alph, parse_antichain(alph, a.antichain));
  std::vector<std::string> factors;
  for (const auto& x : f.factors) factors.push_back(render_antichain(alph, x));
  if (o.json) return o.emit(Json{{"input", render_antichain(alph, f.input)}, {"factors", factors}});
  for (const auto& s : factors) o.line(s);
}

void verb_irreducible(const Output& o, const Args& a) {
  const auto alph = alphabet_from(a.alphabet);
  auto in = parse_antichain(alph, a.antichain);
  const char* kind = to_string(irreducibility(alph, in));
  if (o.json)
    o.emit(Json{{"input", render_antichain(alph, in)}, {"irreducibility", kind}});
  else
    o.line(kind);
}

void verb_cancel(const Output& o, const Args& a) {
  if (!a.antichain.empty()) {
    const auto alph = alphabet_from(a.alphabet);
    auto in = parse_antichain(alph, a.antichain);
    bool holds = cancellation_holds(alph, in);
    if (o.json) return o.emit(Json{{"input", render_antichain(alph, in)}, {"holds", holds}});
    return o.line(holds ? "holds" : "fails");
  }
  if (a.file.empty()) throw UsageError("cancel expects --antichain or a space file");
  auto any = load_space(a.file);
  const auto* sp = std::get_if<WordSpace>(&any);
  if (!sp) throw Refusal("cancel needs a space over words", {std::get<FiniteSpace>(any).algebra().name()});
  const auto& alph = sp->algebra().alphabet();
  Json failures = Json::array();
  std::vector<std::string> lines;
  for (std::size_t x = 0; x < sp->size(); ++x)
    for (std::size_t y = 0; y < sp->size(); ++y) {
      if (cancellation_holds(alph, sp->d(x, y))) continue;
      auto v = render_antichain(alph, sp->d(x, y));
      failures.push_back(Json{{"x", sp->point(x)}, {"y", sp->point(y)}, {"d", v}});
      lines.push_back("fails at " + sp->point(x) + " " + sp->point(y) + " " + v);
    }
  if (o.json) return o.emit(Json{{"holds", failures.empty()}, {"failures", failures}});
  if (lines.empty()) return o.line("holds");
  for (const auto& l : lines) o.line(l);
}

void verb_fix(const Output& o, const Args& a, bool common) {
  if (a.files.size() < 2 || (!common && a.files.size() != 2))
    throw UsageError(common ? "common-fix expects a space and one or more maps" : "fix expects a space and a map");
  std::visit(
      [&](const auto& sp) {
        std::vector<PointMap> maps;
        for (std::size_t i = 1; i < a.files.size(); ++i)
          maps.push_back(load_map_file(a.files[i], sp.points(), sp.points()));
        auto r = common ? common_fixed_point(sp, maps) : fixed_point(sp, maps[0]);
        emit_fixed(o, {sp.point(r.point)}, names_of(sp, r.fixed.members()));
      },
      load_space(a.files.at(0)));
}

void verb_tarski(const Output& o, const Args& a) {
  if (a.files.size() < 2) throw UsageError("tarski expects a poset and one or more maps");
  auto p = load_poset_file(a.files[0]);
  std::vector<PointMap> maps;
  for (std::size_t i = 1; i < a.files.size(); ++i) maps.push_back(load_map_file(a.files[i], p.elements, p.elements));
  if (!a.start.empty()) {
    if (maps.size() != 1) throw UsageError("--start takes a single map");
    auto x = p.elements[abian_brown(p, maps[0], p.index_of(a.start))];
    return o.json ? o.emit(Json{{"fixed point", x}}) : o.line(x);
  }
  if (maps.size() > 1) {
    auto x = p.elements[tarski_common(p, maps)];
    return o.json ? o.emit(Json{{"least", x}}) : o.line("least: " + x);
  }
  auto r = tarski(p, maps[0]);
  auto fixed = names_of(p, r.fixed);
  if (o.json) return o.emit(Json{{"least", p.elements[r.least]}, {"steps", r.steps}, {"fixed", fixed}});
  o.line("least: " + p.elements[r.least]);
  o.line("steps: " + std::to_string(r.steps));
  o.line("fixed: " + join(fixed));
}

void verb_gaps(const Output& o, const Args& a) {
  auto p = load_poset_file(a.file);
  Json all = Json::array();
  for (const auto& g : find_gaps(p, a.bound)) {
    auto lo = names_of(p, g.lower), up = names_of(p, g.upper);
    if (o.json)
      all.push_back(Json{{"lower", lo}, {"upper", up}});
    else
      o.line("{" + join(lo, ",") + "} {" + join(up, ",") + "}");
  }
  if (o.json) o.emit(all);
}

void verb_olr(const Output& o, const Args& a) {
  std::visit(
      [&](const auto& sp) {
        using A = typename std::decay_t<decltype(sp)>::algebra_type;
        // Over words the radii checked are those occurring in the matrix.
        constexpr bool partial = std::is_same_v<A, WordAlgebra>;
        auto w = one_local_retract_witness(sp, subset_of(sp, a.subset));
        if (o.json) {
          Json j{{"one_local_retract", !w.has_value()}, {"partial", partial}};
          if (w) j["witness"] = sp.point(*w);
          return o.emit(j);
        }
        std::string s = w ? "not a one-local retract: " + sp.point(*w) : "one-local retract";
        o.line(partial ? s + " (partial)" : s);
      },
      load_space(a.file));
}

void verb_holes(const Output& o, const Args& a) {
  const auto src_any = load_space(a.file);
  const auto& src = finite_only(src_any, "holes");
  if (!a.radii.empty()) {
    auto h = parse_radii(src, a.radii);
    auto meet = names_of(src, ball_intersection(src, h).members());
    bool hole = meet.empty();
    if (o.json) return o.emit(Json{{"hole", hole}, {"intersection", meet}});
    return o.line(hole ? "hole" : "not a hole: " + join(meet));
  }
  if (a.map.empty()) throw UsageError("holes expects --radii or --map");
  std::optional<AnySpace> dst_any;
  if (!a.to.empty()) dst_any = load_space(a.to);
  const auto& dst = dst_any ? finite_only(*dst_any, "holes") : src;
  auto f = load_map_file(a.map, src.points(), dst.points());
  auto w = hole_preservation_witness(src, dst, f);
  auto kind = to_string(map_check(src, dst, f));
  if (o.json) {
    Json j{{"hole_preserving", !w.has_value()}, {"map", kind}};
    if (w) j["witness"] = labels_of(src.algebra(), *w);
    return o.emit(j);
  }
  o.line(w ? "not hole-preserving: " + join(labels_of(src.algebra(), *w)) : "hole-preserving");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized metric spaces over ordered monoids with involution", "hmetric"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  Limits caps = limits();
  app.add_flag("--json", json, "Print JSON instead of text");
  app.add_option("--max-points", caps.max_points, "Largest space read from a file")->capture_default_str();
  app.add_option("--max-word-len", caps.max_word_len, "Longest word in enumerations")->capture_default_str();
  app.add_option("--max-enum", caps.max_enum, "Bound on exhaustive enumerations")->capture_default_str();

  Args a;
  std::map<std::string, std::function<void(const Output&)>> verbs;
  auto verb = [&](const std::string& name, const std::string& help, std::function<void(const Output&)> run) {
    verbs[name] = std::move(run);
    return app.add_subcommand(name, help);
  };
  auto space_arg = [&](CLI::App* s, const char* what = "Space file") {
    s->add_option("file", a.file, what)->required();
  };
  auto pair_arg = [&](CLI::App* s) { s->add_option("points", a.names, "Two point names")->expected(0, 2); };

  auto* laws = verb("laws", "Check the algebra laws", [&](const Output& o) { verb_laws(o, a); });
  laws->add_option("--algebra", a.algebra, "Builtin spec or algebra file")->required();

  auto* dist = verb("dist", "Distance d_H between two values", [&](const Output& o) { verb_dist(o, a); });
  dist->add_option("--algebra", a.algebra, "Builtin spec, algebra file, or 'words'")->required();
  dist->add_option("--alphabet", a.alphabet, "Alphabet declaration for words");
  dist->add_option("values", a.names, "Two values; the whole table when omitted")->expected(0, 2);

  space_arg(verb("embed", "Canonical embedding into a power of H", [&](const Output& o) { verb_embed(o, a); }));

  auto* hyper = verb("hyperconvex", "Hyperconvexity test", [&](const Output& o) { verb_hyperconvex(o, a); });
  hyper->add_option("file", a.file, "Space file");
  hyper->add_option("--algebra", a.algebra, "Test (H, d_H) instead of a space");

  auto* env = verb("envelope", "Injective envelope", [&](const Output& o) { verb_envelope(o, a); });
  env->add_option("file", a.file, "Space file");
  env->add_option("--algebra", a.algebra, "Algebra for --value");
  env->add_option("--value", a.value, "Two-point envelope S_v");
  env->add_option("--antichain", a.antichain, "Two-point envelope of a final segment");
  env->add_option("--alphabet", a.alphabet, "Alphabet declaration for --antichain");

  space_arg(verb("replete", "Replete space of metric forms", [&](const Output& o) { verb_replete(o, a); }));

  auto* zz = verb("zigzag", "Zigzag distance of a reflexive digraph", [&](const Output& o) { verb_zigzag(o, a); });
  space_arg(zz, "Digraph file");
  pair_arg(zz);
  zz->add_flag("--dot", a.dot, "Print the digraph in dot");

  auto* fence = verb("fence", "Fence distance of a poset", [&](const Output& o) { verb_fence(o, a); });
  space_arg(fence, "Poset file");
  pair_arg(fence);
  fence->add_option("--k", a.k, "Fence lengths above k become inf")->capture_default_str();
  fence->add_flag("--dot", a.dot, "Print the Hasse diagram in dot");

  auto* graphic = verb("graphic", "Graphic distance over nat(k)", [&](const Output& o) { verb_graphic(o, a); });
  space_arg(graphic, "Digraph file");
  pair_arg(graphic);
  graphic->add_option("--k", a.k, "Path lengths above k become inf")->capture_default_str();
  graphic->add_flag("--dot", a.dot, "Print the graph in dot");

  auto* ts = verb("ts", "Distance of a transition system", [&](const Output& o) { verb_ts(o, a); });
  space_arg(ts, "Transition system file");
  pair_arg(ts);

  auto* conn = verb("connexity", "Connexity test for a space over words", [&](const Output& o) { verb_connexity(o, a); });
  space_arg(conn);
  conn->add_flag("--dot", a.dot, "Print the reconstructed digraph in dot");

  for (auto [name, help, run] :
       std::vector<std::tuple<const char*, const char*, void (*)(const Output&, const Args&)>>{
           {"factor", "Factorization into irreducible final segments", verb_factor},
           {"irreducible", "Irreducibility of a final segment", verb_irreducible}}) {
    auto* s = verb(name, help, [&a, run = run](const Output& o) { run(o, a); });
    s->add_option("--antichain", a.antichain, "Basis of the final segment, e.g. \"{ +-+ }\"")->required();
    s->add_option("--alphabet", a.alphabet, "Alphabet declaration");
  }

  auto* cancel = verb("cancel", "Cancellation rule", [&](const Output& o) { verb_cancel(o, a); });
  cancel->add_option("file", a.file, "Space over words; every entry is tested");
  cancel->add_option("--antichain", a.antichain, "Single final segment");
  cancel->add_option("--alphabet", a.alphabet, "Alphabet declaration");

  auto* fix = verb("fix", "Fixed point of a nonexpansive self-map", [&](const Output& o) { verb_fix(o, a, false); });
  fix->add_option("files", a.files, "Space file and map file")->required()->expected(2);
  auto* cfix = verb("common-fix", "Common fixed point of commuting maps",
                    [&](const Output& o) { verb_fix(o, a, true); });
  cfix->add_option("files", a.files, "Space file and map files")->required()->expected(2, -1);

  auto* tarski_cmd = verb("tarski", "Least fixed point on a finite lattice", [&](const Output& o) { verb_tarski(o, a); });
  tarski_cmd->add_option("files", a.files, "Poset file and map files")->required()->expected(2, -1);
  tarski_cmd->add_option("--start", a.start, "Iterate from x <= f(x) instead");

  auto* gaps = verb("gaps", "Gaps of a poset", [&](const Output& o) { verb_gaps(o, a); });
  space_arg(gaps, "Poset file");
  gaps->add_option("--bound", a.bound, "Largest side; 0 scans all subsets")->capture_default_str();

  auto* olr = verb("olr", "One-local retract test", [&](const Output& o) { verb_olr(o, a); });
  space_arg(olr);
  olr->add_option("--subset", a.subset, "Points of the subset")->required()->delimiter(',');

  auto* holes = verb("holes", "Holes and hole-preserving maps", [&](const Output& o) { verb_holes(o, a); });
  space_arg(holes);
  holes->add_option("--radii", a.radii, "Radius per point")->delimiter(',');
  holes->add_option("--map", a.map, "Map file");
  holes->add_option("--to", a.to, "Target space of --map (default: the source)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (app.get_subcommands().empty())
      for (const auto& t : args)
        if (!t.empty() && t[0] != '-' && !std::isdigit(static_cast<unsigned char>(t[0])) && !verbs.count(t)) {
          err << "unknown verb '" << t << "'\n";
          return 1;
        }
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const Limits saved = limits();
  limits() = caps;
  struct Restore {
    Limits saved;
    ~Restore() { limits() = saved; }
  } restore{saved};

  Output o{out, json};
  try {
    verbs.at(app.get_subcommands().front()->get_name())(o);
    return 0;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return 1;
  } catch (const Refusal& e) {
    out << Json{{"refused", e.what()}, {"witness", e.witness()}}.dump() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace hmetric
