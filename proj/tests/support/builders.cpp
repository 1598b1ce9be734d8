#include "support/builders.hpp"

#include "ptchron/csv.hpp"

#include <sstream>

namespace ptchron::test {

std::string to_csv(const std::vector<Session>& sessions)
{
    std::ostringstream out;
    out << "EventID,Order,SubjectID,CodeStateSection,EventType,SourceLocation,EditType,"
           "InsertText,DeleteText,ClientTimestamp\n";
    for (const Session& s : sessions) {
        for (const EditEvent& ev : s.events) {
            out << csv_quote(ev.event_id) << ',' << ev.order << ','
                << csv_quote(ev.subject_id) << ',' << csv_quote(ev.file_id) << ",File.Edit,"
                << ev.index << ',' << (ev.kind == EditKind::Insert ? "Insert" : "Delete")
                << ',';
            std::string text = to_utf8(ev.text);
            if (ev.kind == EditKind::Insert)
                out << csv_quote(text) << ",,";
            else
                out << ',' << csv_quote(text) << ',';
            out << csv_quote(ev.timestamp) << '\n';
        }
    }
    return out.str();
}

}  // namespace ptchron::test
