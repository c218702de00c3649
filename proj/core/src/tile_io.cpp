#include "maxmult/tile_io.hpp"

#include <ostream>

#include "json.hpp"

namespace maxmult {

using nlohmann::json;

namespace {

json tile_json(const Tile& s) { return {{"k", s.I.k}, {"index", s.I.index}, {"n", s.n}}; }

Tile tile_from(const json& j) {
  return Tile{DyadicInterval{j.at("k").get<int>(), j.at("index").get<std::int64_t>()}, j.at("n").get<std::size_t>()};
}

json tiles_json(const TileSet& S) {
  json arr = json::array();
  for (const auto& s : S) arr.push_back(tile_json(s));
  return arr;
}

TileSet tiles_from(const json& arr) {
  TileSet S;
  for (const auto& j : arr) S.insert(tile_from(j));
  return S;
}

json forest_json(const std::vector<Tree>& forest) {
  json arr = json::array();
  for (const auto& t : forest) {
    json members = json::array();
    for (const auto& s : t.tiles) members.push_back(tile_json(s));
    arr.push_back({{"top", tile_json(t.top)}, {"member_tiles", std::move(members)}});
  }
  return arr;
}

std::vector<Tree> forest_from(const json& arr) {
  std::vector<Tree> forest;
  for (const auto& j : arr) {
    Tree t{tile_from(j.at("top")), {}};
    for (const auto& s : j.at("member_tiles")) t.tiles.push_back(tile_from(s));
    forest.push_back(std::move(t));
  }
  return forest;
}

template <class Fn>
auto parse_or_throw(const std::string& text, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(std::string("tile json: ") + e.what());
  }
}

}  // namespace

std::string tiles_to_json(const TileSet& S) { return tiles_json(S).dump(); }

TileSet tiles_from_json(const std::string& text) {
  return parse_or_throw(text, [](const json& j) { return tiles_from(j); });
}

std::string forest_to_json(const std::vector<Tree>& forest) { return forest_json(forest).dump(); }

std::vector<Tree> forest_from_json(const std::string& text) {
  return parse_or_throw(text, [](const json& j) { return forest_from(j); });
}

std::string decomposition_to_json(const Decomposition& dec) {
  json strata = json::array();
  for (const auto& st : dec.strata) {
    strata.push_back({{"m", st.m},
                      {"lambda", st.lambda},
                      {"terminal", st.terminal},
                      {"sum_top_lengths", st.sum_top_lengths},
                      {"forest", forest_json(st.forest)}});
  }
  json j = {{"initial_size", dec.initial_size},
            {"input_convex", dec.input_convex},
            {"strata", std::move(strata)},
            {"residual", tiles_json(dec.residual)}};
  return j.dump();
}

Decomposition decomposition_from_json(const std::string& text) {
  return parse_or_throw(text, [](const json& j) {
    Decomposition dec;
    dec.initial_size = j.at("initial_size").get<double>();
    dec.input_convex = j.at("input_convex").get<bool>();
    for (const auto& s : j.at("strata")) {
      Stratum st;
      st.m = s.at("m").get<int>();
      st.lambda = s.at("lambda").get<double>();
      st.terminal = s.at("terminal").get<bool>();
      st.sum_top_lengths = s.at("sum_top_lengths").get<double>();
      st.forest = forest_from(s.at("forest"));
      dec.strata.push_back(std::move(st));
    }
    dec.residual = tiles_from(j.at("residual"));
    return dec;
  });
}

void write_strata_csv(std::ostream& out, const Decomposition& dec, double f_norm2) {
  out << "lambda,m,num_trees,sum_IT,bessel_ratio\n";
  const auto old = out.precision(17);
  const double energy = f_norm2 * f_norm2;
  for (const auto& st : dec.strata) {
    const double ratio = energy > 0.0 ? st.sum_top_lengths * st.lambda * st.lambda / energy : 0.0;
    out << st.lambda << ',' << st.m << ',' << st.forest.size() << ',' << st.sum_top_lengths << ',' << ratio << '\n';
  }
  out.precision(old);
}

}  // namespace maxmult
