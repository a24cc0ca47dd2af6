use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::sync::Arc;

use serde_json::{json, Value};

use domgame::http::HttpServer;
use domgame::service::GameService;

fn request(
    addr: SocketAddr,
    method: &str,
    path: &str,
    body: Option<&Value>,
) -> (u16, Value, String) {
    let mut stream = TcpStream::connect(addr).unwrap();
    let payload = body.map(|b| b.to_string()).unwrap_or_default();
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\nContent-Type: application/json\r\nContent-Length: {}\r\n\r\n{payload}",
        payload.len()
    )
    .unwrap();
    let mut raw = String::new();
    stream.read_to_string(&mut raw).unwrap();
    let (head, body) = raw
        .split_once("\r\n\r\n")
        .expect("response has a header block");
    let status: u16 = head.split_whitespace().nth(1).unwrap().parse().unwrap();
    let content_type = head
        .lines()
        .find_map(|l| {
            let (k, v) = l.split_once(':')?;
            k.eq_ignore_ascii_case("content-type")
                .then(|| v.trim().to_string())
        })
        .unwrap_or_default();
    (status, serde_json::from_str(body).unwrap(), content_type)
}

fn server() -> (HttpServer, SocketAddr) {
    let server = HttpServer::bind("127.0.0.1:0", Arc::new(GameService::default()), 2).unwrap();
    let addr = server.local_addr();
    (server, addr)
}

fn cycle(n: usize) -> String {
    let mut s = format!("p {n} {n}\n");
    for i in 0..n {
        s.push_str(&format!("e {} {}\n", i, (i + 1) % n));
    }
    s
}

#[test]
fn alice_wins_an_edge_in_one_move() {
    let (server, addr) = server();
    let (status, created, ctype) = request(
        addr,
        "POST",
        "/api/games",
        Some(&json!({"graph": "p 2 1\ne 0 1\n", "human": "A"})),
    );
    assert_eq!(status, 201);
    assert_eq!(ctype, "application/json");
    let id = created["id"].as_str().unwrap().to_string();
    assert_eq!(id.len(), 32);
    assert_eq!(created["state"]["status"], "ongoing");
    assert_eq!(created["state"]["turn"], "A");
    assert_eq!(created["state"]["claims"], json!(["-", "-"]));

    let (status, rows, _) = request(addr, "GET", &format!("/api/games/{id}/analysis"), None);
    assert_eq!(status, 200);
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[0]["outcome"], "A");
    assert_eq!(rows[0]["plies"], 1);

    let (status, state, _) = request(
        addr,
        "POST",
        &format!("/api/games/{id}/moves"),
        Some(&json!({"vertex": 0})),
    );
    assert_eq!(status, 200);
    assert_eq!(state["status"], "alice_dominates");
    assert_eq!(state["dominatingSet"], json!([0]));
    assert_eq!(state["history"], json!([{"player": "A", "vertex": 0}]));

    let (status, err, _) = request(
        addr,
        "POST",
        &format!("/api/games/{id}/moves"),
        Some(&json!({"vertex": 1})),
    );
    assert_eq!(status, 409);
    assert_eq!(err["code"], "game_finished");

    let (status, same, _) = request(addr, "GET", &format!("/api/games/{id}"), None);
    assert_eq!(status, 200);
    assert_eq!(same, state);
    server.shutdown();
}

#[test]
fn engine_opens_when_human_is_bob_and_holds_the_draw() {
    let (server, addr) = server();
    let (status, created, _) = request(
        addr,
        "POST",
        "/api/games",
        Some(&json!({"graph": cycle(10), "human": "B"})),
    );
    assert_eq!(status, 201);
    let id = created["id"].as_str().unwrap().to_string();
    let mut state = created["state"].clone();
    assert_eq!(state["history"].as_array().unwrap().len(), 1);
    assert_eq!(state["history"][0]["player"], "A");
    assert_eq!(state["turn"], "B");

    // Bob follows the engine's own analysis, so perfect play on both sides ends drawn.
    while state["status"] == "ongoing" {
        let (_, rows, _) = request(addr, "GET", &format!("/api/games/{id}/analysis"), None);
        let best = rows[0]["vertex"].as_u64().unwrap();
        let (status, next, _) = request(
            addr,
            "POST",
            &format!("/api/games/{id}/moves"),
            Some(&json!({"vertex": best})),
        );
        assert_eq!(status, 200);
        state = next;
    }
    assert_eq!(state["status"], "exhausted");
    server.shutdown();
}

#[test]
fn errors_carry_codes_and_statuses() {
    let (server, addr) = server();
    let (status, err, _) = request(addr, "GET", "/api/games/nope", None);
    assert_eq!((status, err["code"].as_str()), (404, Some("not_found")));

    let (status, err, _) = request(addr, "GET", "/api/unknown", None);
    assert_eq!((status, err["code"].as_str()), (404, Some("not_found")));

    let (status, err, _) = request(
        addr,
        "POST",
        "/api/games",
        Some(&json!({"graph": "p 2 1\n"})),
    );
    assert_eq!((status, err["code"].as_str()), (400, Some("bad_request")));

    let mut raw = TcpStream::connect(addr).unwrap();
    raw.write_all(
        b"POST /api/games HTTP/1.1\r\nHost: x\r\nConnection: close\r\nContent-Length: 3\r\n\r\n{x,",
    )
    .unwrap();
    let mut text = String::new();
    raw.read_to_string(&mut text).unwrap();
    assert!(text.starts_with("HTTP/1.1 400"), "{text}");

    let (status, err, _) = request(
        addr,
        "POST",
        "/api/games",
        Some(&json!({"graph": cycle(20)})),
    );
    assert_eq!((status, err["code"].as_str()), (400, Some("too_large")));

    let (_, created, _) = request(
        addr,
        "POST",
        "/api/games",
        Some(&json!({"graph": cycle(5), "human": "A"})),
    );
    let id = created["id"].as_str().unwrap();
    let moves = format!("/api/games/{id}/moves");
    let (status, err, _) = request(addr, "POST", &moves, Some(&json!({"vertex": 9})));
    assert_eq!((status, err["code"].as_str()), (409, Some("illegal_move")));

    let (_, state, _) = request(addr, "POST", &moves, Some(&json!({"vertex": 0})));
    let taken = state["history"][0]["vertex"].as_u64().unwrap();
    let (status, err, _) = request(addr, "POST", &moves, Some(&json!({"vertex": taken})));
    assert_eq!((status, err["code"].as_str()), (409, Some("illegal_move")));

    let (_, created, _) = request(
        addr,
        "POST",
        "/api/games",
        Some(&json!({"graph": "p 3 2\ne 0 1\ne 1 2\nt B\n", "human": "A"})),
    );
    // the engine is Bob and moves first; after that it is the human's turn again
    assert_eq!(created["state"]["turn"], "A");
    server.shutdown();
}

#[test]
fn concurrent_sessions_are_independent() {
    let (server, addr) = server();
    let handles: Vec<_> = (0..8)
        .map(|_| {
            std::thread::spawn(move || {
                let (_, created, _) = request(
                    addr,
                    "POST",
                    "/api/games",
                    Some(&json!({"graph": cycle(7), "human": "A"})),
                );
                created["id"].as_str().unwrap().to_string()
            })
        })
        .collect();
    let mut ids: Vec<String> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 8);
    for id in &ids {
        let (status, state, _) = request(addr, "GET", &format!("/api/games/{id}"), None);
        assert_eq!(status, 200);
        assert!(state["history"].as_array().unwrap().is_empty());
    }
    server.shutdown();
}
