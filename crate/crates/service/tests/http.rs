use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use hexpoint_service::api::{router, AppState, Config};

fn app(dir: &std::path::Path) -> Router {
    router(AppState::new(Config {
        data_dir: dir.to_path_buf(),
        ..Config::default()
    }))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(match body {
            Some(v) => Body::from(v.to_string()),
            None => Body::empty(),
        })
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    (status, value)
}

#[tokio::test]
async fn solver_replies_to_a_move() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (status, created) = call(&app, "POST", "/games", Some(json!({"k": 3, "opponent": "solver"}))).await;
    assert_eq!(status, StatusCode::OK);
    let id = created["id"].as_str().unwrap().to_string();
    assert_eq!(created["board"]["text"], "k=3\n...\n...\n...\nto_move=H\n");

    let (status, moved) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"z1": 2, "z2": 2}))).await;
    assert_eq!(status, StatusCode::OK);
    let reply = &moved["solverMove"];
    assert!(reply["z1"].is_u64() && reply["z2"].is_u64());
    assert_eq!(moved["board"]["cells"][1][1], "H");
    assert_eq!(moved["board"]["toMove"], "H");

    let (status, occupied) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"z1": 2, "z2": 2}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(occupied["code"], "occupied_cell");

    let (status, off) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"z1": 4, "z2": 1}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(off["code"], "out_of_bounds");

    let (status, session) = call(&app, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(session["history"].as_array().unwrap().len(), 2);
    assert_eq!(session["history"][0]["player"], "H");
    assert_eq!(session["history"][1]["player"], "V");
}

#[tokio::test]
async fn play_to_the_end_and_read_the_interface() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (_, created) = call(&app, "POST", "/games", Some(json!({"k": 3, "opponent": "solver"}))).await;
    let id = created["id"].as_str().unwrap().to_string();

    let (status, early) = call(&app, "GET", &format!("/games/{id}/interface"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(early["code"], "board_not_full");

    let mut winner = Value::Null;
    for _ in 0..9 {
        let (_, session) = call(&app, "GET", &format!("/games/{id}"), None).await;
        let cells = session["board"]["cells"].as_array().unwrap().clone();
        let free = (0..3)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .find(|&(r, c)| cells[r][c] == ".")
            .unwrap();
        let (_, moved) = call(
            &app,
            "POST",
            &format!("/games/{id}/moves"),
            Some(json!({"z1": free.1 + 1, "z2": free.0 + 1})),
        )
        .await;
        if !moved["winner"].is_null() {
            winner = moved["winner"].clone();
            break;
        }
    }
    // the second player facing perfect play loses
    assert_eq!(winner, "V");

    let (status, view) = call(&app, "GET", &format!("/games/{id}/interface"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["winner"], "V");
    assert_eq!(view["paths"].as_array().unwrap().len(), 2);
    assert_eq!(view["pairs"][0], json!(["u1", "u2"]));

    let (status, over) = call(&app, "POST", &format!("/games/{id}/moves"), Some(json!({"z1": 1, "z2": 1}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(over["code"], "game_over");
}

#[tokio::test]
async fn sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let first = app(dir.path());
    let (_, created) = call(&first, "POST", "/games", Some(json!({"k": 4, "opponent": "none"}))).await;
    let id = created["id"].as_str().unwrap().to_string();
    for (z1, z2) in [(1, 1), (2, 3), (4, 4)] {
        let (status, _) = call(&first, "POST", &format!("/games/{id}/moves"), Some(json!({"z1": z1, "z2": z2}))).await;
        assert_eq!(status, StatusCode::OK);
    }
    let (_, before) = call(&first, "GET", &format!("/games/{id}"), None).await;

    let second = app(dir.path());
    let (status, after) = call(&second, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(after, before);

    let path = dir.path().join(format!("{id}.json"));
    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    file["history"][2]["z1"] = json!(3);
    std::fs::write(&path, file.to_string()).unwrap();
    let third = app(dir.path());
    let (status, err) = call(&third, "GET", &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::INTERNAL_SERVER_ERROR);
    assert_eq!(err["code"], "corrupt_session");
}

#[tokio::test]
async fn request_errors() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (status, err) = call(&app, "GET", "/games/0123abcd", None).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::NOT_FOUND, Some("not_found")));

    let (status, err) = call(&app, "POST", "/games", Some(json!({"k": 7, "opponent": "solver"}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::SERVICE_UNAVAILABLE, Some("board_too_large")));

    let (status, err) = call(&app, "POST", "/games", Some(json!({"size": 3}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("bad_request")));

    let (status, err) = call(&app, "POST", "/fixedpoint", Some(json!({"map": "x +", "eps": 0.01}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::BAD_REQUEST, Some("parse_error")));

    let (status, err) = call(&app, "POST", "/fixedpoint", Some(json!({"map": "x + 1; y", "eps": 0.01}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::UNPROCESSABLE_ENTITY, Some("map_range")));

    let (status, err) = call(&app, "POST", "/fixedpoint", Some(json!({"map": "x; y", "eps": 1e-9, "lipschitz": 1.0}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::SERVICE_UNAVAILABLE, Some("resource_limit")));

    let (status, err) = call(&app, "POST", "/sperner", Some(json!({"m": 2, "n": 100000, "map": "l0; l1; l2"}))).await;
    assert_eq!((status, err["code"].as_str()), (StatusCode::SERVICE_UNAVAILABLE, Some("resource_limit")));
}

#[tokio::test]
async fn fixed_point_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let body = json!({"map": "x; y", "eps": 0.01});
    let (status, first) = call(&app, "POST", "/fixedpoint", Some(body.clone())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(first["residual"], 0.0);
    assert_eq!(first["k"], 8);
    let (_, second) = call(&app, "POST", "/fixedpoint", Some(body)).await;
    assert_eq!(first, second);

    let (status, rot) = call(
        &app,
        "POST",
        "/fixedpoint",
        Some(json!({"mapName": "rotation180", "eps": 0.01, "heatmap": true})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert!(rot["residual"].as_f64().unwrap() <= 0.01);
    let counts = &rot["coveringCounts"];
    assert_eq!(rot["covering"]["hplus"].as_array().unwrap().len() as u64, counts["hplus"].as_u64().unwrap());
}

#[tokio::test]
async fn sperner_endpoint() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(dir.path());
    let (status, r) = call(&app, "POST", "/sperner", Some(json!({"m": 2, "n": 4, "mapName": "simplex-rotation"}))).await;
    assert_eq!(status, StatusCode::OK);
    let count = r["count"].as_u64().unwrap();
    assert_eq!(count % 2, 1);
    assert_eq!(r["completelyLabeledCells"].as_array().unwrap().len() as u64, count);
}
