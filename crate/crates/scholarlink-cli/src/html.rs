//! HTML rendering of wikified documents: each linked mention becomes an
//! anchor over the original surface text.

use scholarlink::linker::LinkDecision;

fn escape_text(out: &mut String, text: &str) {
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(ch),
        }
    }
}

/// The anchor target for an entity title: spaces become underscores, so
/// `web server` links to `Web_server`. With no base the link is a local
/// fragment (`#Web_server`); with a base it is `<base>Web_server`.
pub fn anchor_for(title: &str, link_base: Option<&str>) -> String {
    let slug = title.replace(' ', "_");
    match link_base {
        Some(base) => format!("{base}{slug}"),
        None => format!("#{slug}"),
    }
}

/// Renders one document: the normalized abstract with every linked mention
/// wrapped in an anchor. Decisions without an entity are left as plain text.
pub fn render_document(
    id: &str,
    text: &str,
    decisions: &[LinkDecision],
    link_base: Option<&str>,
) -> String {
    let mut spans: Vec<(&LinkDecision, &str)> = decisions
        .iter()
        .filter_map(|d| d.entity_title.as_deref().map(|t| (d, t)))
        .collect();
    spans.sort_by_key(|(d, _)| d.mention.start);

    let mut out = String::new();
    out.push_str("<section class=\"abstract\" id=\"");
    escape_text(&mut out, id);
    out.push_str("\">\n<h2>");
    escape_text(&mut out, id);
    out.push_str("</h2>\n<p>");
    let mut cursor = 0usize;
    for (decision, title) in spans {
        let (start, end) = (decision.mention.start, decision.mention.end);
        if start < cursor || end > text.len() {
            continue;
        }
        escape_text(&mut out, &text[cursor..start]);
        out.push_str("<a href=\"");
        escape_text(&mut out, &anchor_for(title, link_base));
        out.push_str("\" title=\"");
        escape_text(&mut out, title);
        out.push_str("\">");
        escape_text(&mut out, &text[start..end]);
        out.push_str("</a>");
        cursor = end;
    }
    escape_text(&mut out, &text[cursor..]);
    out.push_str("</p>\n</section>\n");
    out
}

/// Renders a full page for a batch of documents.
pub fn render_page(documents: &[(String, String, Vec<LinkDecision>)], link_base: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    out.push_str("<title>Wikified abstracts</title>\n</head>\n<body>\n");
    for (id, text, decisions) in documents {
        out.push_str(&render_document(id, text, decisions, link_base));
    }
    out.push_str("</body>\n</html>\n");
    out
}
