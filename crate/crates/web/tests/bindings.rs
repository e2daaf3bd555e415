use paritylab_web::{curve_local_data, hilbert_symbol_table, real_place_map};

#[test]
fn real_place_identity_holds_on_the_grid() {
    let v = real_place_map(-8, 8, -8, 8).unwrap();
    let cells = v["cells"].as_array().unwrap();
    // 17·16 pairs with b ≠ 0, minus those with a² = 4b
    let excluded = (-8i64..=8).filter(|a| a % 2 == 0 && a * a / 4 <= 8 && a * a / 4 != 0).count();
    assert_eq!(cells.len(), 17 * 16 - excluded);
    for c in cells {
        assert_eq!(c["equal"], true, "{c}");
    }
    // σ_∞ is not constant over the grid
    let minus = cells.iter().filter(|c| c["sigma"] == -1).count();
    assert!(minus > 0 && minus < cells.len());
}

#[test]
fn real_place_map_limits() {
    assert!(real_place_map(0, -1, 0, 1).is_err());
    assert!(real_place_map(0, 1000, 0, 1).is_err());
}

#[test]
fn local_data_of_91b1() {
    let v = curve_local_data("[0,1,1,-7,5]").unwrap();
    let places = v["places"].as_array().unwrap();
    let p7 = places.iter().find(|p| p["p"] == 7).unwrap();
    assert_eq!(p7["kodaira"], "I1");
    assert_eq!(p7["tamagawa"], 1);
    assert_eq!(v["global_root_number"], -1);
    assert!(curve_local_data("0,0,0,0,0").is_err());
    assert!(curve_local_data("1,2").is_err());
}

#[test]
fn hilbert_table_is_symmetric_and_respects_squares() {
    let v = hilbert_symbol_table("-1, 2, 3, 5, 4, 1/7", "2").unwrap();
    let t: Vec<Vec<i64>> = v["table"].as_array().unwrap().iter().map(|r| r.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()).collect();
    for i in 0..t.len() {
        for j in 0..t.len() {
            assert_eq!(t[i][j], t[j][i]);
        }
        // (x, 4) = 1
        assert_eq!(t[i][4], 1);
    }
    assert_eq!(t[0][0], -1);
    let real = hilbert_symbol_table("-1,2", "inf").unwrap();
    assert_eq!(real["table"][0][0], -1);
    assert!(hilbert_symbol_table("0,1", "3").is_err());
    assert!(hilbert_symbol_table("1,2", "4").is_err());
}
