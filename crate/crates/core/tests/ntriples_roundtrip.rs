use kgprof_core::rdf::{parse_line, Term};
use kgprof_testkit::{Node, Triple};
use proptest::prelude::*;

fn iri() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 <>\"{}|^`\\\\é中/#:._~-]{0,24}".prop_map(|tail| format!("http://p.example/{tail}"))
}

fn node() -> impl Strategy<Value = Node> {
    prop_oneof![
        iri().prop_map(Node::Iri),
        "[A-Za-z][A-Za-z0-9]{0,8}".prop_map(Node::Blank),
        any::<String>().prop_map(Node::lit),
        (any::<String>(), "[a-z]{2,3}(-[a-z0-9]{2,4})?").prop_map(|(s, l)| Node::lang(s, &l)),
        (any::<String>(), iri()).prop_map(|(s, dt)| Node::typed(s, &dt)),
    ]
}

fn same(node: &Node, term: &Term) -> bool {
    match (node, term) {
        (Node::Iri(a), Term::Iri(b)) => a == b,
        (Node::Blank(a), Term::BlankNode(b)) => a == b,
        (
            Node::Literal {
                lexical,
                datatype,
                lang,
            },
            t,
        ) => {
            t.is_literal()
                && t.lexical() == lexical
                && t.datatype() == datatype.as_deref()
                && t.language() == lang.as_deref()
        }
        _ => false,
    }
}

proptest! {
    #[test]
    fn serialized_triples_parse_back(s in prop_oneof![iri().prop_map(Node::Iri), "[a-z]{1,6}".prop_map(Node::Blank)],
                                     p in iri(),
                                     o in node()) {
        let line = Triple::new(s.clone(), &p, o.clone()).to_string();
        let parsed = parse_line(&line).map_err(|e| TestCaseError::fail(format!("{line}: {e}")))?;
        let t = parsed.expect("a triple, not a blank line");
        prop_assert!(same(&s, &t.subject), "subject of {}", line);
        prop_assert_eq!(t.predicate.as_iri(), Some(p.as_str()));
        prop_assert!(same(&o, &t.object), "object of {}", line);
    }

    #[test]
    fn garbage_never_panics(line in any::<String>()) {
        let _ = parse_line(&line);
    }
}

#[test]
fn comments_and_blank_lines_are_skipped() {
    assert_eq!(parse_line("# comment").unwrap(), None);
    assert_eq!(parse_line("   ").unwrap(), None);
    assert!(parse_line("<http://x/a> <http://x/p> .").is_err());
}
