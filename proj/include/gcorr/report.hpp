#pragma once

// Pass/fail reports with witnesses, and the line-oriented machine format
// shared by every CLI subcommand.
//
// Machine format: one record per line, `type key=value key=value ...`.
// Values are percent-encoded for '%', '=', ' ', tab, CR and LF; keys and
// types are plain identifiers.  read_records(write_records(r)) == r.

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcorr/error.hpp"

namespace gcorr {

  struct Finding {
    std::string code;  // stable tag, e.g. "associativity", "cocycle"
    std::string message;
    std::string witness;
  };

  class Report {
   public:
    Report() = default;
    explicit Report(std::string subject) : _subject(std::move(subject)) {}

    void fail(std::string code, std::string message, std::string witness = {}) {
      _violations.push_back(
          {std::move(code), std::move(message), std::move(witness)});
    }

    void fact(std::string key, std::string value) {
      _facts.emplace_back(std::move(key), std::move(value));
    }

    template <typename T>
    void fact(std::string key, T const& value) {
      std::ostringstream os;
      os << value;
      _facts.emplace_back(std::move(key), os.str());
    }

    void note(std::string text) {
      _notes.push_back(std::move(text));
    }

    // Appends violations, facts and notes from `other`.
    void absorb(Report const& other) {
      for (auto const& f : other._violations) {
        _violations.push_back(f);
      }
      for (auto const& f : other._facts) {
        _facts.push_back(f);
      }
      for (auto const& n : other._notes) {
        _notes.push_back(n);
      }
    }

    [[nodiscard]] bool ok() const noexcept {
      return _violations.empty();
    }

    [[nodiscard]] bool has(std::string_view code) const {
      for (auto const& f : _violations) {
        if (f.code == code) {
          return true;
        }
      }
      return false;
    }

    [[nodiscard]] Finding const* first(std::string_view code) const {
      for (auto const& f : _violations) {
        if (f.code == code) {
          return &f;
        }
      }
      return nullptr;
    }

    [[nodiscard]] std::string fact_value(std::string_view key) const {
      for (auto const& [k, v] : _facts) {
        if (k == key) {
          return v;
        }
      }
      return {};
    }

    [[nodiscard]] std::string const& subject() const noexcept {
      return _subject;
    }
    [[nodiscard]] std::vector<Finding> const& violations() const noexcept {
      return _violations;
    }
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> const&
    facts() const noexcept {
      return _facts;
    }
    [[nodiscard]] std::vector<std::string> const& notes() const noexcept {
      return _notes;
    }

   private:
    std::string                                      _subject;
    std::vector<Finding>                             _violations;
    std::vector<std::pair<std::string, std::string>> _facts;
    std::vector<std::string>                         _notes;
  };

  ////////////////////////////////////////////////////////////////////////
  // Machine format
  ////////////////////////////////////////////////////////////////////////

  struct Record {
    std::string                                      type;
    std::vector<std::pair<std::string, std::string>> fields;

    Record& add(std::string key, std::string value) {
      fields.emplace_back(std::move(key), std::move(value));
      return *this;
    }

    template <typename T>
    Record& add(std::string key, T const& value) {
      std::ostringstream os;
      os << value;
      fields.emplace_back(std::move(key), os.str());
      return *this;
    }

    [[nodiscard]] std::string get(std::string_view key) const {
      for (auto const& [k, v] : fields) {
        if (k == key) {
          return v;
        }
      }
      return {};
    }

    bool operator==(Record const&) const = default;
  };

  namespace detail {
    inline bool needs_escape(char c) {
      return c == '%' || c == '=' || c == ' ' || c == '\t' || c == '\n'
             || c == '\r';
    }

    inline int hex_value(char c) {
      if (c >= '0' && c <= '9') {
        return c - '0';
      }
      if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
      }
      if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
      }
      return -1;
    }
  }  // namespace detail

  inline std::string escape_value(std::string_view v) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string           out;
    out.reserve(v.size());
    for (char c : v) {
      if (detail::needs_escape(c)) {
        auto u = static_cast<unsigned char>(c);
        out += '%';
        out += digits[u >> 4];
        out += digits[u & 0xF];
      } else {
        out += c;
      }
    }
    return out;
  }

  inline std::string unescape_value(std::string_view v) {
    std::string out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == '%') {
        if (i + 2 >= v.size()) {
          throw input_error("truncated percent escape in machine record");
        }
        int hi = detail::hex_value(v[i + 1]);
        int lo = detail::hex_value(v[i + 2]);
        if (hi < 0 || lo < 0) {
          throw input_error("bad percent escape in machine record");
        }
        out += static_cast<char>(hi * 16 + lo);
        i += 2;
      } else {
        out += v[i];
      }
    }
    return out;
  }

  inline std::string write_record(Record const& r) {
    std::string line = r.type;
    for (auto const& [k, v] : r.fields) {
      line += ' ';
      line += k;
      line += '=';
      line += escape_value(v);
    }
    line += '\n';
    return line;
  }

  inline std::string write_records(std::vector<Record> const& rs) {
    std::string out;
    for (auto const& r : rs) {
      out += write_record(r);
    }
    return out;
  }

  // The bundled report reader.
  inline std::vector<Record> read_records(std::string_view text) {
    std::vector<Record> out;
    std::size_t         pos = 0;
    std::size_t         lineno = 0;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      auto line = text.substr(pos, end - pos);
      pos       = end + 1;
      ++lineno;
      if (line.empty()) {
        continue;
      }
      Record      rec;
      std::size_t i = 0;
      auto        next_token = [&]() {
        auto j = line.find(' ', i);
        if (j == std::string_view::npos) {
          j = line.size();
        }
        auto tok = line.substr(i, j - i);
        i        = j < line.size() ? j + 1 : j;
        return tok;
      };
      rec.type = std::string(next_token());
      if (rec.type.empty()) {
        throw input_error("machine record " + std::to_string(lineno)
                          + ": missing type");
      }
      while (i < line.size()) {
        auto tok = next_token();
        auto eq  = tok.find('=');
        if (eq == std::string_view::npos) {
          throw input_error("machine record " + std::to_string(lineno)
                            + ": field without '='");
        }
        rec.fields.emplace_back(std::string(tok.substr(0, eq)),
                                unescape_value(tok.substr(eq + 1)));
      }
      out.push_back(std::move(rec));
    }
    return out;
  }

  inline std::vector<Record> to_records(Report const& rep) {
    std::vector<Record> out;
    out.push_back(Record{"report", {}}
                      .add("subject", rep.subject())
                      .add("status", std::string(rep.ok() ? "pass" : "fail"))
                      .add("violations", rep.violations().size()));
    for (auto const& [k, v] : rep.facts()) {
      out.push_back(Record{"fact", {}}.add("key", k).add("value", v));
    }
    for (auto const& f : rep.violations()) {
      out.push_back(Record{"violation", {}}
                        .add("code", f.code)
                        .add("message", f.message)
                        .add("witness", f.witness));
    }
    for (auto const& n : rep.notes()) {
      out.push_back(Record{"note", {}}.add("text", n));
    }
    return out;
  }

  inline std::string to_text(Report const& rep) {
    std::ostringstream os;
    os << rep.subject() << ": " << (rep.ok() ? "PASS" : "FAIL") << '\n';
    for (auto const& [k, v] : rep.facts()) {
      os << "  " << k << ": " << v << '\n';
    }
    for (auto const& f : rep.violations()) {
      os << "  violation [" << f.code << "] " << f.message;
      if (!f.witness.empty()) {
        os << " -- witness " << f.witness;
      }
      os << '\n';
    }
    for (auto const& n : rep.notes()) {
      os << "  note: " << n << '\n';
    }
    return os.str();
  }

}  // namespace gcorr
