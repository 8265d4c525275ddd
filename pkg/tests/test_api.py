from app.schemas.instance import InstanceRecord


class TestHealthAPI:
    """健康检查API测试"""

    def test_health_check(self, client):
        """测试健康检查接口"""
        response = client.get("/api/v1/health/")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert "version" in data
        assert data["alphabet"] == "01"

    def test_root_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"


class TestRegexAPI:
    """正则API测试"""

    def test_parse(self, client):
        """测试解析返回规范形式"""
        response = client.post("/api/v1/regex/parse", json={"text": "(01)*"})
        assert response.status_code == 200
        data = response.json()

        # 验证结果
        assert data["canonical"] == "((0.1)*)"
        assert data["operators"] == ["a", "*", "."]
        assert data["size"] == 4
        assert data["nullable"] is True

    def test_parse_syntax_error(self, client):
        """测试语法错误返回 400"""
        response = client.post("/api/v1/regex/parse", json={"text": "(("})
        assert response.status_code == 400

    def test_parse_operator_not_allowed(self, client):
        response = client.post("/api/v1/regex/parse", json={"text": "(~1)", "ops": "reduced"})
        assert response.status_code == 400

    def test_unknown_operator_set(self, client):
        response = client.post("/api/v1/regex/parse", json={"text": "0", "ops": "tiny"})
        assert response.status_code == 400

    def test_match(self, client):
        """测试逐串判定"""
        response = client.post("/api/v1/regex/match", json={
            "text": "((0.1)*)",
            "strings": ["0101", "1000100", ""],
        })
        assert response.status_code == 200
        assert response.json()["results"] == {"0101": True, "1000100": False, "": True}

    def test_cost(self, client):
        """测试变代价"""
        response = client.post("/api/v1/regex/cost", json={
            "text": "(0.((1.(0*))*))",
            "costs": {"a": 20, "?": 8, "*": 3, ".": 45, "+": 38},
        })
        assert response.status_code == 200
        assert response.json()["cost"] == 156

    def test_cost_unknown_key(self, client):
        response = client.post("/api/v1/regex/cost", json={"text": "0", "costs": {"x": 1}})
        assert response.status_code == 400


class TestSolveAPI:
    """求解API测试"""

    def test_solve(self, client, alternating_instance):
        """测试求解交替串实例"""
        record = InstanceRecord.from_instance(alternating_instance)
        response = client.post("/api/v1/solve/", json={"instance": record.model_dump()})
        assert response.status_code == 200
        data = response.json()

        # 验证结果
        assert data["id"] == "alt"
        assert data["solution"]["cost"] == 4
        assert data["solution"]["minimal"] is True
        assert data["stats"]["capped"] is None

    def test_solve_capped(self, client, alternating_instance):
        record = InstanceRecord.from_instance(alternating_instance)
        response = client.post("/api/v1/solve/", json={"instance": record.model_dump(), "caps_footprints": 1})
        assert response.status_code == 200
        assert response.json()["solution"] == {"regex": "(0.(1.(0.1)))", "cost": 7, "minimal": False}

    def test_solve_infeasible(self, client):
        """测试P与N相交时返回 400"""
        response = client.post("/api/v1/solve/", json={"instance": {"id": "bad", "pos": ["0"], "neg": ["0"]}})
        assert response.status_code == 400
