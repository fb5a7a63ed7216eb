#include "qsearch/database.hpp"

#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qsearch {

using Code = DatabaseError::Code;

BitPattern parse_bits(std::string_view bits)
{
    BitPattern out;
    out.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DatabaseError(Code::InvalidBit,
                                "bit string \"" + std::string(bits) + "\" has a non-{0,1} character");
        }
        out.push_back(c == '1');
    }
    return out;
}

std::string format_bits(const BitPattern& bits)
{
    std::string s;
    s.reserve(bits.size());
    for (bool b : bits) s.push_back(b ? '1' : '0');
    return s;
}

Database::Database(std::vector<FieldSpec> fields, std::string key_field, std::vector<Record> records)
    : fields_(std::move(fields)), key_field_(std::move(key_field)), records_(std::move(records))
{
    std::set<std::string> names;
    for (const auto& f : fields_) {
        if (f.bit_width == 0) {
            throw DatabaseError(Code::Malformed, "field \"" + f.name + "\" has zero bit_width");
        }
        if (!names.insert(f.name).second) {
            throw DatabaseError(Code::DuplicateField, "field \"" + f.name + "\" declared twice");
        }
    }
    if (!names.contains(key_field_)) {
        throw DatabaseError(Code::UnknownKeyField, "key_field \"" + key_field_ + "\" is not declared");
    }
    if (records_.empty()) throw DatabaseError(Code::Empty, "database has no records");

    std::set<std::string> keys;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& rec = records_[i];
        for (const auto& [name, value] : rec.values) {
            if (!names.contains(name)) {
                throw DatabaseError(Code::UnknownField, "record " + std::to_string(i) +
                                                            " has undeclared field \"" + name + "\"");
            }
        }
        for (const auto& f : fields_) {
            auto it = rec.values.find(f.name);
            if (it == rec.values.end()) {
                throw DatabaseError(Code::MissingField, "record " + std::to_string(i) +
                                                            " lacks field \"" + f.name + "\"");
            }
            parse_bits(it->second);
            if (it->second.size() != f.bit_width) {
                throw DatabaseError(Code::WidthMismatch,
                                    "record " + std::to_string(i) + " field \"" + f.name + "\" has " +
                                        std::to_string(it->second.size()) + " bits, expected " +
                                        std::to_string(f.bit_width));
            }
        }
        if (!keys.insert(rec.values.at(key_field_)).second) {
            throw DatabaseError(Code::DuplicateKey,
                                "key \"" + rec.values.at(key_field_) + "\" appears twice");
        }
    }
}

const FieldSpec& Database::field(std::string_view name) const
{
    for (const auto& f : fields_) {
        if (f.name == name) return f;
    }
    throw DatabaseError(Code::UnknownField, "field \"" + std::string(name) + "\" is not declared");
}

bool Database::has_field(std::string_view name) const
{
    for (const auto& f : fields_) {
        if (f.name == name) return true;
    }
    return false;
}

std::optional<std::size_t> Database::find_key(std::string_view key) const
{
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (!records_[i].sentinel && key_of(i) == key) return i;
    }
    return std::nullopt;
}

std::vector<BitPattern> Database::key_table() const
{
    std::vector<BitPattern> out;
    out.reserve(records_.size());
    for (std::size_t i = 0; i < records_.size(); ++i) out.push_back(parse_bits(key_of(i)));
    return out;
}

Database load_database(std::string_view document)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw DatabaseError(Code::Malformed, std::string("database is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw DatabaseError(Code::Malformed, "database must be a JSON object");
        if (doc.at("version").get<int>() != 1) {
            throw DatabaseError(Code::UnsupportedVersion, "only database version 1 is supported");
        }
        std::vector<FieldSpec> fields;
        for (const auto& f : doc.at("fields")) {
            const auto width = f.at("bit_width").get<long long>();
            if (width < 1) {
                throw DatabaseError(Code::Malformed, "bit_width must be a positive integer");
            }
            fields.push_back({f.at("name").get<std::string>(), static_cast<std::size_t>(width)});
        }
        std::vector<Record> records;
        for (const auto& r : doc.at("records")) {
            if (!r.is_object()) throw DatabaseError(Code::Malformed, "record must be a JSON object");
            Record rec;
            for (const auto& [name, value] : r.items()) {
                if (!value.is_string()) {
                    throw DatabaseError(Code::Malformed, "field \"" + name + "\" must be a bit string");
                }
                rec.values[name] = value.get<std::string>();
            }
            records.push_back(std::move(rec));
        }
        return Database(std::move(fields), doc.at("key_field").get<std::string>(), std::move(records));
    } catch (const nlohmann::json::exception& e) {
        throw DatabaseError(Code::Malformed, std::string("malformed database: ") + e.what());
    }
}

Database load_database_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DatabaseError(Code::Malformed, "cannot open database file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_database(ss.str());
}

std::string export_database(const Database& db)
{
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["fields"] = nlohmann::ordered_json::array();
    for (const auto& f : db.fields()) {
        doc["fields"].push_back({{"name", f.name}, {"bit_width", f.bit_width}});
    }
    doc["key_field"] = db.key_field();
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& rec : db.records()) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (const auto& f : db.fields()) r[f.name] = rec.values.at(f.name);
        doc["records"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

Database pad_to_power_of_two(const Database& db)
{
    const std::size_t target = std::max<std::size_t>(2, std::bit_ceil(db.size()));
    if (target == db.size()) return db;

    // Distinct keys bound the record count by 2^width, so bit_ceil(size)
    // unused keys always exist.
    const std::size_t width = db.key_width();
    std::set<std::string> used;
    for (std::size_t i = 0; i < db.size(); ++i) used.insert(db.key_of(i));

    auto records = db.records();
    for (std::uint64_t v = 0; records.size() < target; ++v) {
        std::string key(width, '0');
        for (std::size_t b = 0; b < width && b < 64; ++b) {
            if ((v >> b) & 1U) key[width - 1 - b] = '1';
        }
        if (used.contains(key)) continue;
        Record rec;
        rec.sentinel = true;
        for (const auto& f : db.fields()) rec.values[f.name] = std::string(f.bit_width, '0');
        rec.values[db.key_field()] = key;
        records.push_back(std::move(rec));
    }
    return Database(db.fields(), db.key_field(), std::move(records));
}

std::size_t index_width(const Database& db)
{
    if (!std::has_single_bit(db.size())) {
        throw DatabaseError(Code::Malformed, "database size is not a power of two; pad it first");
    }
    return static_cast<std::size_t>(std::countr_zero(db.size()));
}

BitPattern encode_key(const Database& db, std::string_view value)
{
    if (value.size() != db.key_width()) {
        throw DatabaseError(Code::WidthMismatch, "key \"" + std::string(value) + "\" has " +
                                                     std::to_string(value.size()) + " bits, expected " +
                                                     std::to_string(db.key_width()));
    }
    return parse_bits(value);
}

void validate_query(const Database& db, const SearchQuery& query)
{
    encode_key(db, query.key_value);
    if (!db.has_field(query.return_field)) {
        throw DatabaseError(Code::UnknownField,
                            "return field \"" + query.return_field + "\" is not declared");
    }
}

}  // namespace qsearch
