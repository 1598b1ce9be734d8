#include "ptchron/csv.hpp"

namespace ptchron {

std::optional<std::vector<std::string>> CsvReader::next(size_t& line)
{
    int c = in_.get();
    // skip a bare empty line between records
    while (c == '\n' || c == '\r') {
        if (c == '\n')
            ++line_;
        c = in_.get();
    }
    if (c == EOF)
        return std::nullopt;

    line = line_ + 1;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    while (true) {
        if (c == EOF) {
            fields.push_back(cur);
            break;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int nxt = in_.get();
                if (nxt == '"') {
                    cur.push_back('"');
                } else {
                    quoted = false;
                    c = nxt;
                    continue;
                }
            } else {
                if (ch == '\n')
                    ++line_;
                cur.push_back(ch);
            }
        } else {
            if (ch == '"' && cur.empty()) {
                quoted = true;
            } else if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else if (ch == '\n' || ch == '\r') {
                if (ch == '\r') {
                    int nxt = in_.peek();
                    if (nxt == '\n')
                        in_.get();
                }
                ++line_;
                fields.push_back(cur);
                return fields;
            } else {
                cur.push_back(ch);
            }
        }
        c = in_.get();
    }
    return fields;
}

std::string csv_quote(const std::string& field)
{
    bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs)
        return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"')
            out += "\"\"";
        else
            out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

}  // namespace ptchron
