#include "bibalance/serialization.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "bibalance/errors.hpp"

namespace bibalance {

namespace {

using nlohmann::json;

double parse_real(std::string_view field, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DomainError("bad " + std::string(what) + " value '" +
                      std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string transcript_to_json(const Transcript& transcript) {
  json rounds = json::array();
  for (const auto& round : transcript.rounds()) {
    rounds.push_back({round.odds.value(), round.bet.value()});
  }
  const json doc = {
      {"T", transcript.config().horizon},
      {"gamma", transcript.config().overround},
      {"rounds", rounds},
      {"loss", {transcript.accumulated().l0, transcript.accumulated().l1}},
  };
  return doc.dump() + "\n";
}

Transcript transcript_from_json(std::string_view text) {
  const json doc = parse_json(text);
  try {
    Transcript transcript(GameConfig(doc.at("T").get<int>(),
                                     doc.value("gamma", 1.0)));
    const auto& rounds = doc.at("rounds");
    if (static_cast<int>(rounds.size()) > transcript.config().horizon) {
      throw DomainError("transcript has more rounds than T");
    }
    for (const auto& round : rounds) {
      if (!round.is_array() || round.size() != 2) {
        throw DomainError("each round must be [r, q]");
      }
      transcript.push(OddsPoint(round[0].get<double>()),
                      BetPoint(round[1].get<double>()));
    }
    if (doc.contains("loss")) {
      const auto& loss = doc.at("loss");
      const LossVector stored{loss.at(0).get<double>(),
                              loss.at(1).get<double>()};
      if (!(stored == transcript.accumulated())) {
        throw DomainError("stored loss does not match the rounds");
      }
    }
    return transcript;
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad transcript JSON: ") + e.what());
  }
}

std::string transcript_to_csv(const Transcript& transcript) {
  std::string out = "t,r,q,l0_cum,l1_cum\n";
  LossVector acc;
  int t = 0;
  for (const auto& round : transcript.rounds()) {
    acc += round_loss(round.odds, round.bet);
    out += std::to_string(++t) + "," + format_real(round.odds.value()) + "," +
           format_real(round.bet.value()) + "," + format_real(acc.l0) + "," +
           format_real(acc.l1) + "\n";
  }
  return out;
}

Transcript transcript_from_csv(std::string_view text, double overround) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != "t,r,q,l0_cum,l1_cum") {
    throw DomainError("CSV transcript must start with t,r,q,l0_cum,l1_cum");
  }
  const int rows = static_cast<int>(lines.size()) - 1;
  Transcript transcript(GameConfig(std::max(rows, 1), overround));
  for (int i = 1; i <= rows; ++i) {
    const auto fields = split(lines[static_cast<std::size_t>(i)], ',');
    if (fields.size() != 5) {
      throw DomainError("CSV row " + std::to_string(i) + " needs 5 fields");
    }
    transcript.push(OddsPoint(parse_real(fields[1], "r")),
                    BetPoint(parse_real(fields[2], "q")));
    const LossVector stored{parse_real(fields[3], "l0_cum"),
                            parse_real(fields[4], "l1_cum")};
    if (!(stored == transcript.accumulated())) {
      throw DomainError("CSV row " + std::to_string(i) +
                        ": cumulative loss does not match the rounds");
    }
  }
  return transcript;
}

std::string tree_to_json(const BalancedTree& tree) {
  json odds = json::object();
  for (int len = 0; len < tree.depth(); ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      std::string key(static_cast<std::size_t>(len), '0');
      for (int i = 0; i < len; ++i) {
        if ((bits >> (len - 1 - i)) & 1U) key[static_cast<std::size_t>(i)] = '1';
      }
      odds[key] = tree.odds_at(len, bits);
    }
  }
  const json doc = {{"depth", tree.depth()}, {"x", tree.x()}, {"odds", odds}};
  return doc.dump() + "\n";
}

BalancedTree tree_from_json(std::string_view text) {
  const json doc = parse_json(text);
  try {
    const int depth = doc.at("depth").get<int>();
    const double x = doc.at("x").get<double>();
    if (depth < 1 || depth > kMaxMaterializedDepth) {
      throw CapacityError("tree depth outside [1, " +
                          std::to_string(kMaxMaterializedDepth) + "]");
    }
    const std::size_t nodes = (std::size_t{1} << depth) - 1;
    const auto& odds = doc.at("odds");
    if (odds.size() != nodes) {
      throw DomainError("tree JSON needs " + std::to_string(nodes) + " odds");
    }
    BalancedTree tree(depth, x, ValuePair{x, f_involution(depth, x)},
                      std::vector<double>(nodes, 0.5));
    for (const auto& [key, value] : odds.items()) {
      tree.set_odds(key, value.get<double>());
    }
    return tree;
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad tree JSON: ") + e.what());
  }
}

std::vector<BetPoint> load_bets(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw DomainError("empty bet file");
  if (text[first] == '[') {
    const json doc = parse_json(text);
    std::vector<BetPoint> bets;
    try {
      for (const auto& q : doc) bets.emplace_back(q.get<double>());
    } catch (const json::exception& e) {
      throw DomainError(std::string("bad bet array: ") + e.what());
    }
    return bets;
  }
  const Transcript transcript = text[first] == '{'
                                    ? transcript_from_json(text)
                                    : transcript_from_csv(text);
  return transcript.bets();
}

std::vector<BetPoint> load_bets_file(const std::string& path) {
  return load_bets(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace bibalance
