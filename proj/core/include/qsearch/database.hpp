#pragma once

// Classical content of the searched database: records of fixed-width bit
// fields, one of which (the key field) is the searched field.
//
// Database file (JSON, version 1):
//   {"version": 1,
//    "fields": [{"name": "key", "bit_width": 4}, ...],
//    "key_field": "key",
//    "records": [{"key": "0101", ...}, ...]}
// Bit strings are ASCII '0'/'1', most significant (data qubit d_1) first.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qsearch {

using BitPattern = std::vector<bool>;

BitPattern parse_bits(std::string_view bits);  // throws DatabaseError(InvalidBit)
std::string format_bits(const BitPattern& bits);

class DatabaseError : public std::runtime_error {
public:
    enum class Code {
        Malformed,
        UnsupportedVersion,
        DuplicateField,
        UnknownKeyField,
        UnknownField,
        MissingField,
        WidthMismatch,
        InvalidBit,
        DuplicateKey,
        Empty,
    };

    DatabaseError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

struct FieldSpec {
    std::string name;
    std::size_t bit_width = 0;

    bool operator==(const FieldSpec&) const = default;
};

struct Record {
    std::map<std::string, std::string> values;  // field name -> bit string
    bool sentinel = false;                      // padding entry, never a solution

    bool operator==(const Record&) const = default;
};

struct SearchQuery {
    std::string key_value;
    std::string return_field;
};

class Database {
public:
    /// Validates every invariant; throws DatabaseError.
    Database(std::vector<FieldSpec> fields, std::string key_field, std::vector<Record> records);

    const std::vector<FieldSpec>& fields() const { return fields_; }
    const std::string& key_field() const { return key_field_; }
    const std::vector<Record>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    const FieldSpec& field(std::string_view name) const;
    bool has_field(std::string_view name) const;
    std::size_t key_width() const { return field(key_field_).bit_width; }
    const std::string& key_of(std::size_t index) const { return records_[index].values.at(key_field_); }

    /// Index of the non-sentinel record holding `key`, if any.
    std::optional<std::size_t> find_key(std::string_view key) const;

    /// Key bits of every record, in record order.
    std::vector<BitPattern> key_table() const;

    bool operator==(const Database&) const = default;

private:
    std::vector<FieldSpec> fields_;
    std::string key_field_;
    std::vector<Record> records_;
};

Database load_database(std::string_view document);
Database load_database_file(const std::string& path);
std::string export_database(const Database& db);

/// Appends sentinel records until the size is a power of two (at least 2).
/// Sentinel keys are the lexicographically smallest unused bit strings; other
/// sentinel fields are all zero.
Database pad_to_power_of_two(const Database& db);

/// log2 of the record count; requires a power of two.
std::size_t index_width(const Database& db);

/// Data-qubit pattern for a key value (leftmost character -> d_1).
BitPattern encode_key(const Database& db, std::string_view value);

void validate_query(const Database& db, const SearchQuery& query);

}  // namespace qsearch
