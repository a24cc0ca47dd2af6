//! JSON-over-HTTP front end for [`GameService`].
//!
//! | method | path                      | body                    |
//! |--------|---------------------------|-------------------------|
//! | POST   | `/api/games`              | `{graph, human}`        |
//! | GET    | `/api/games/{id}`         |                         |
//! | POST   | `/api/games/{id}/moves`   | `{vertex}`              |
//! | GET    | `/api/games/{id}/analysis`|                         |
//!
//! Errors are `{code, message}` with status 400, 404 or 409.

use std::net::SocketAddr;
use std::sync::Arc;
use std::thread::JoinHandle;

use serde::Deserialize;
use serde_json::{json, Value};
use tiny_http::{Header, Request, Response, Server};

use crate::graph::Vertex;
use crate::position::Player;
use crate::service::{GameService, ServiceError};

#[derive(Deserialize)]
struct CreateBody {
    graph: String,
    #[serde(default = "default_human")]
    human: Player,
}

fn default_human() -> Player {
    Player::Alice
}

#[derive(Deserialize)]
struct MoveBody {
    vertex: Vertex,
}

fn error_body(e: &ServiceError) -> (u16, Value) {
    (
        e.http_status(),
        json!({ "code": e.code(), "message": e.to_string() }),
    )
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, ServiceError> {
    serde_json::from_str(body)
        .map_err(|e| ServiceError::BadRequest(format!("invalid JSON body: {e}")))
}

/// Route one request. Split out from the server loop so it can be tested
/// without sockets.
pub fn route(service: &GameService, method: &str, path: &str, body: &str) -> (u16, Value) {
    let segments: Vec<&str> = path
        .split('?')
        .next()
        .unwrap_or("")
        .split('/')
        .filter(|s| !s.is_empty())
        .collect();
    let result = match (method, segments.as_slice()) {
        ("POST", ["api", "games"]) => parse_body::<CreateBody>(body).and_then(|b| {
            let (id, state) = service.create(&b.graph, b.human)?;
            Ok((201, json!({ "id": id, "state": state })))
        }),
        ("GET", ["api", "games", id]) => service.state(id).map(|s| (200, json!(s))),
        ("POST", ["api", "games", id, "moves"]) => parse_body::<MoveBody>(body)
            .and_then(|b| service.play(id, b.vertex).map(|s| (200, json!(s)))),
        ("GET", ["api", "games", id, "analysis"]) => {
            service.analysis(id).map(|rows| (200, json!(rows)))
        }
        _ => Err(ServiceError::NotFound(path.to_string())),
    };
    result.unwrap_or_else(|e| error_body(&e))
}

fn respond(service: &GameService, mut request: Request) {
    let mut body = String::new();
    let (status, value) = match request.as_reader().read_to_string(&mut body) {
        Ok(_) => {
            let method = request.method().as_str().to_string();
            route(service, &method, request.url(), &body)
        }
        Err(e) => error_body(&ServiceError::BadRequest(format!("unreadable body: {e}"))),
    };
    let header = Header::from_bytes("Content-Type", "application/json").expect("static header");
    let response = Response::from_string(value.to_string())
        .with_status_code(status)
        .with_header(header);
    // the client may have gone away; nothing useful to do about it
    let _ = request.respond(response);
}

/// A running server with a fixed pool of worker threads.
pub struct HttpServer {
    server: Arc<Server>,
    workers: Vec<JoinHandle<()>>,
}

impl HttpServer {
    pub fn bind(addr: &str, service: Arc<GameService>, workers: usize) -> std::io::Result<Self> {
        let server = Arc::new(Server::http(addr).map_err(std::io::Error::other)?);
        let workers = (0..workers.max(1))
            .map(|_| {
                let server = Arc::clone(&server);
                let service = Arc::clone(&service);
                std::thread::spawn(move || {
                    while let Ok(request) = server.recv() {
                        respond(&service, request);
                    }
                })
            })
            .collect();
        Ok(HttpServer { server, workers })
    }

    pub fn local_addr(&self) -> SocketAddr {
        self.server
            .server_addr()
            .to_ip()
            .expect("bound to an IP address")
    }

    /// Block until the workers exit (they run until shutdown).
    pub fn join(self) {
        for w in self.workers {
            let _ = w.join();
        }
    }

    pub fn shutdown(self) {
        for _ in &self.workers {
            self.server.unblock();
        }
        self.join();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routing_examples() {
        let svc = GameService::default();
        let (status, body) = route(
            &svc,
            "POST",
            "/api/games",
            r#"{"graph":"p 3 2\ne 0 1\ne 1 2\n","human":"A"}"#,
        );
        assert_eq!(status, 201);
        let id = body["id"].as_str().unwrap().to_string();
        assert_eq!(body["state"]["claims"], json!(["-", "-", "-"]));
        assert_eq!(body["state"]["turn"], "A");

        let (status, body) = route(&svc, "GET", &format!("/api/games/{id}/analysis"), "");
        assert_eq!(status, 200);
        assert_eq!(body[0]["vertex"], 1);
        assert_eq!(body[0]["value"], "AliceWin");

        let (status, body) = route(
            &svc,
            "POST",
            &format!("/api/games/{id}/moves"),
            r#"{"vertex":1}"#,
        );
        assert_eq!(status, 200);
        assert_eq!(body["status"], "alice_dominates");
        assert_eq!(body["dominatingSet"], json!([1]));

        let (status, body) = route(
            &svc,
            "POST",
            &format!("/api/games/{id}/moves"),
            r#"{"vertex":0}"#,
        );
        assert_eq!(
            (status, body["code"].as_str()),
            (409, Some("game_finished"))
        );

        let (status, body) = route(&svc, "POST", "/api/games", "{not json");
        assert_eq!((status, body["code"].as_str()), (400, Some("bad_request")));
        assert_eq!(route(&svc, "GET", "/api/games/unknown", "").0, 404);
        assert_eq!(route(&svc, "DELETE", "/api/games", "").0, 404);
    }
}
