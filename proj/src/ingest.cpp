#include "athn/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>

namespace athn {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Days since 1970-01-01 for a civil date (Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// "d-m-yyyy hh:mm" to absolute minutes.
Minutes parse_timestamp(const std::string& text, int row) {
  int d = 0, m = 0, y = 0, hh = 0, mm = 0;
  if (std::sscanf(text.c_str(), "%d-%d-%d %d:%d", &d, &m, &y, &hh, &mm) != 5 || m < 1 || m > 12 ||
      d < 1 || d > 31 || hh < 0 || hh > 23 || mm < 0 || mm > 59)
    throw ParseError("row " + std::to_string(row) + ": bad timestamp '" + text + "'");
  return days_from_civil(y, m, d) * 1440 + hh * 60 + mm;
}

std::string format_timestamp(Minutes abs_minutes) {
  std::int64_t days = abs_minutes / 1440;
  std::int64_t rem = abs_minutes % 1440;
  // civil_from_days
  std::int64_t z = days + 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%u-%u-%lld %02lld:%02lld", d, m,
                static_cast<long long>(y + (m <= 2)), static_cast<long long>(rem / 60),
                static_cast<long long>(rem % 60));
  return buf;
}

const char* kHeader = "StopNum,OrderNum,StopArrivalDate,StopDepartureDate,Stop,City,ZipCode,Status,Event";

}  // namespace

std::vector<StopRecord> parse_stop_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input");
  const auto header = split_csv(trim(line));
  const auto expected = split_csv(kHeader);
  for (const auto& col : expected) {
    if (std::find(header.begin(), header.end(), col) == header.end())
      throw ParseError("missing column: " + col);
  }
  std::vector<int> col_of(expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    col_of[i] = static_cast<int>(std::find(header.begin(), header.end(), expected[i]) - header.begin());

  std::vector<StopRecord> out;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() < header.size())
      throw ParseError("row " + std::to_string(row) + ": expected " +
                       std::to_string(header.size()) + " fields");
    auto f = [&](int i) { return trim(fields[static_cast<std::size_t>(col_of[static_cast<std::size_t>(i)])]); };
    StopRecord r;
    try {
      r.stop_number = std::stoll(f(0));
      r.stop_seq = std::stoi(f(4));
    } catch (const std::exception&) {
      throw ParseError("row " + std::to_string(row) + ": bad numeric field");
    }
    r.order_number = f(1);
    r.arrival = parse_timestamp(f(2), row);
    r.departure = parse_timestamp(f(3), row);
    r.city = f(5);
    r.zip = f(6);
    r.status = f(7);
    r.event = f(8);
    if (r.departure < r.arrival)
      throw ParseError("row " + std::to_string(row) + ": departure before arrival");
    out.push_back(std::move(r));
  }

  std::stable_sort(out.begin(), out.end(), [](const StopRecord& a, const StopRecord& b) {
    if (a.order_number != b.order_number) return a.order_number < b.order_number;
    return a.stop_seq < b.stop_seq;
  });

  // stop_seq must be 1..n without gaps per order.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool first = i == 0 || out[i].order_number != out[i - 1].order_number;
    const int expect = first ? 1 : out[i - 1].stop_seq + 1;
    if (out[i].stop_seq != expect)
      throw MalformedOrderError("order " + out[i].order_number + ": stop sequence not 1..n");
  }

  // Shift timestamps to minutes from the earliest arrival.
  if (!out.empty()) {
    Minutes base = std::numeric_limits<Minutes>::max();
    for (const auto& r : out) base = std::min(base, r.arrival);
    for (auto& r : out) {
      r.arrival -= base;
      r.departure -= base;
    }
  }
  return out;
}

std::string write_stop_records(const std::vector<StopRecord>& records, Minutes epoch_offset) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : records) {
    os << r.stop_number << ',' << r.order_number << ',' << format_timestamp(r.arrival + epoch_offset)
       << ',' << format_timestamp(r.departure + epoch_offset) << ',' << r.stop_seq << ',' << r.city
       << ',' << r.zip << ',' << r.status << ',' << r.event << '\n';
  }
  return os.str();
}

CodeMap CodeMap::from_csv(std::istream& in) {
  CodeMap map;
  map.loaded_status.clear();
  map.empty_status.clear();
  map.loaded_events.clear();
  map.empty_events.clear();
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw ParseError("code map row " + std::to_string(row));
    const auto kind = trim(fields[0]);
    const auto code = trim(fields[1]);
    if (kind == "loaded_status") map.loaded_status.insert(code);
    else if (kind == "empty_status") map.empty_status.insert(code);
    else if (kind == "loaded_event") map.loaded_events.insert(code);
    else if (kind == "empty_event") map.empty_events.insert(code);
    else throw ParseError("code map: unknown kind '" + kind + "'");
  }
  return map;
}

std::vector<DerivedOrder> derive_orders(const std::vector<StopRecord>& records,
                                        const CodeMap& codes, std::vector<std::string>* warnings) {
  std::vector<DerivedOrder> out;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    while (j < records.size() && records[j].order_number == records[i].order_number) ++j;
    const std::size_t n = j - i;
    if (n < 2) throw MalformedOrderError("order " + records[i].order_number + ": fewer than 2 stops");

    DerivedOrder o;
    o.order_id = records[i].order_number;
    o.origin = records[i].location_key();
    o.pickup_time = records[i].arrival;

    bool last_explicit = false;
    for (std::size_t s = i + 1; s < j; ++s) {
      const auto& end_stop = records[s];
      TripLeg leg{records[s - 1].location_key(), end_stop.location_key(), true};
      const auto& status = end_stop.status;
      last_explicit = true;
      if (codes.empty_status.count(status)) {
        leg.loaded = false;
      } else if (codes.loaded_status.count(status)) {
        leg.loaded = true;
      } else {
        last_explicit = false;
        // Status absent or unknown: infer from the event at the end stop.
        if (codes.empty_events.count(end_stop.event)) leg.loaded = false;
        else if (codes.loaded_events.count(end_stop.event)) leg.loaded = true;
        else if (warnings)
          warnings->push_back("order " + o.order_id + " stop " +
                              std::to_string(end_stop.stop_seq) + ": unknown codes '" + status +
                              "'/'" + end_stop.event + "', assuming loaded");
      }
      o.legs.push_back(leg);
    }

    // Delivery round trip: a return to the start after only deliveries is
    // assumed empty, unless the final stop's status code says otherwise.
    const bool returns = o.legs.back().to == o.origin;
    bool deliveries_loaded = true;
    for (std::size_t l = 0; l + 1 < o.legs.size(); ++l) deliveries_loaded &= o.legs[l].loaded;
    if (returns && deliveries_loaded && o.legs.size() >= 2 && !last_explicit)
      o.legs.back().loaded = false;

    for (const auto& leg : o.legs) (leg.loaded ? o.loaded_legs : o.empty_legs)++;
    o.challenging = o.legs.size() == 2 && returns && o.legs[0].loaded && !o.legs[1].loaded;
    o.destination = o.challenging ? o.legs[0].to : o.legs.back().to;
    out.push_back(std::move(o));
    i = j;
  }
  return out;
}

AccessPointHistogram AccessPointHistogram::from_csv(std::istream& in) {
  AccessPointHistogram hist;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 2) throw ParseError("histogram row " + std::to_string(row));
    if (row == 1 && trim(fields[0]) == "location") continue;  // optional header
    std::int64_t count = 0;
    try {
      count = std::stoll(trim(fields[1]));
    } catch (const std::exception&) {
      throw ParseError("histogram row " + std::to_string(row) + ": bad count");
    }
    if (count < 0) throw ParseError("histogram row " + std::to_string(row) + ": negative count");
    hist.counts[trim(fields[0])] += count;
  }
  return hist;
}

Miles PairTable::distance(const std::string& a, const std::string& b) const {
  if (a == b) return 0;
  auto it = miles.find({a, b});
  if (it == miles.end()) throw SchemaError("no distance for " + a + " -> " + b);
  return it->second;
}

Minutes PairTable::time(const std::string& a, const std::string& b) const {
  if (a == b) return 0;
  auto it = minutes.find({a, b});
  if (it == minutes.end()) throw SchemaError("no travel time for " + a + " -> " + b);
  return it->second;
}

PairTable PairTable::from_csv(std::istream& in) {
  PairTable t;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw ParseError("matrix row " + std::to_string(row));
    if (row == 1 && trim(fields[2]) == "miles") continue;  // optional header
    const auto a = trim(fields[0]);
    const auto b = trim(fields[1]);
    try {
      t.miles[{a, b}] = std::stoll(trim(fields[2]));
      t.minutes[{a, b}] = std::stoll(trim(fields[3]));
    } catch (const std::exception&) {
      throw ParseError("matrix row " + std::to_string(row) + ": bad number");
    }
    t.locations.insert(a);
    t.locations.insert(b);
  }
  return t;
}

std::vector<std::string> place_hubs(const AccessPointHistogram& hist, int k, Miles min_separation,
                                    const PairTable& distances) {
  if (k < 1) throw ConfigError("hub count must be >= 1");
  if (hist.counts.empty()) throw ConfigError("empty access-point histogram");

  std::vector<std::pair<std::string, std::int64_t>> candidates(hist.counts.begin(),
                                                               hist.counts.end());
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> chosen;
  for (const auto& [loc, count] : candidates) {
    if (static_cast<int>(chosen.size()) == k) break;
    bool ok = true;
    for (const auto& h : chosen) {
      if (distances.distance(loc, h) < min_separation) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(loc);
  }
  return chosen;
}

}  // namespace athn
