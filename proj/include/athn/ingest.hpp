#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "athn/types.hpp"

namespace athn {

// One row of the stop-record order data.
struct StopRecord {
  std::int64_t stop_number = 0;
  std::string order_number;
  Minutes arrival = 0;    // minutes from the earliest arrival in the file
  Minutes departure = 0;
  int stop_seq = 0;       // 1-based position within the order
  std::string city;
  std::string zip;
  std::string status;  // vehicle status on arrival, e.g. LD / MT
  std::string event;   // what happens at the stop, e.g. HPL / LUL / DMT

  std::string location_key() const { return zip; }
};

// Status/event code interpretation; the defaults cover the codes that appear
// in the stop-record format and can be replaced from a code-map file.
struct CodeMap {
  std::set<std::string> loaded_status = {"LD"};
  std::set<std::string> empty_status = {"MT"};
  std::set<std::string> loaded_events = {"LLD", "LUL", "HPL"};
  std::set<std::string> empty_events = {"DMT"};

  static CodeMap from_csv(std::istream& in);  // rows: kind,code
};

struct TripLeg {
  std::string from;
  std::string to;
  bool loaded = true;
};

struct DerivedOrder {
  std::string order_id;
  std::string origin;       // location key of the first stop
  std::string destination;  // location key of the delivery stop
  Minutes pickup_time = 0;
  std::vector<TripLeg> legs;
  int loaded_legs = 0;
  int empty_legs = 0;
  bool challenging = false;  // single delivery followed by an empty return
};

// Parses the nine-column stop CSV. Rows come back grouped and ordered by
// (order_number, stop_seq); timestamps are minutes from the earliest arrival.
std::vector<StopRecord> parse_stop_records(std::istream& in);
std::string write_stop_records(const std::vector<StopRecord>& records, Minutes epoch_offset = 0);

// Attributes loaded/empty legs per order. A leg is empty when the arriving
// status at its end stop says so, with event codes as fallback; a pure
// delivery round trip gets its return leg corrected to empty. Unknown codes
// land in `warnings` when non-null.
std::vector<DerivedOrder> derive_orders(const std::vector<StopRecord>& records,
                                        const CodeMap& codes = {},
                                        std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Hub placement

struct AccessPointHistogram {
  std::map<std::string, std::int64_t> counts;

  static AccessPointHistogram from_csv(std::istream& in);  // rows: location,count
};

struct PairTable {
  std::map<std::pair<std::string, std::string>, Miles> miles;
  std::map<std::pair<std::string, std::string>, Minutes> minutes;
  std::set<std::string> locations;

  Miles distance(const std::string& a, const std::string& b) const;
  Minutes time(const std::string& a, const std::string& b) const;

  static PairTable from_csv(std::istream& in);  // rows: location,location,miles,minutes
};

// Greedy: highest-frequency candidates first (ties by lowest id), each new
// hub at least min_separation from all chosen ones. May return fewer than k.
std::vector<std::string> place_hubs(const AccessPointHistogram& hist, int k, Miles min_separation,
                                    const PairTable& distances);

}  // namespace athn
