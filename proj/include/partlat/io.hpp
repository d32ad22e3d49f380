// Line-oriented file formats shared by the CLI and the tests, plus report
// rendering (key: value text with a JSON mirror).

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "partlat/closure.hpp"
#include "partlat/quads.hpp"
#include "partlat/replay.hpp"
#include "partlat/term.hpp"

namespace partlat {

// Header "n <int>", then one prt line per partition.  Used both for
// generator sets and for evaluation tuples.
struct PrtFile {
    int n = 0;
    std::vector<Partition> parts;
};

PrtFile read_prt_file(std::istream& in);
PrtFile read_prt_file(const std::string& path);
void write_prt_file(std::ostream& out, const PrtFile& f);

// Key-value lines: n, alpha..delta (prt), provenance, and a target line
// naming the generator slot the quad was built around.
GeneratorQuad read_quad(std::istream& in);
GeneratorQuad read_quad_file(const std::string& path);
void write_quad(std::ostream& out, const GeneratorQuad& q);

// Header "k <int>", then one term per line.
TermVector read_terms(std::istream& in);
TermVector read_terms_file(const std::string& path);
void write_terms(std::ostream& out, const TermVector& tv);

// Ordered report; renders as "key: value" lines or as a JSON object.
class Report {
  public:
    template <typename V>
    void set(const std::string& key, V&& value) {
        data_[key] = std::forward<V>(value);
    }
    std::string text() const;
    std::string json_text(int indent = 2) const;
    const nlohmann::ordered_json& data() const { return data_; }

  private:
    nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
};

Report closure_report(const ClosureReport& r);
Report replay_report(const ReplayReport& r, const std::string& script_id);
Report eligibility_report(const EligibilityReport& r);
Report extension_report(const ExtensionReport& r);

// Human-audit dump: one "name := recipe  # expected prt(...)" line per step,
// with recipe variables rendered as the names they reference; generator
// values listed up front as comments.
std::string dump_script(const ProofScript& s);

// Recipe printed over its reference names instead of x1..xk.
std::string render_recipe(const LatticeTerm& t, const std::vector<std::string>& names);

}  // namespace partlat
